from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgdescent.field import QQ, GF, Field
from dgdescent.linalg import Reducer, kernel, rank, solve_linear, inverse_columns, axpy

F5 = GF(5)
small = st.integers(-6, 6)


@given(small, small, small)
def test_fp_field_axioms(a, b, c):
    x, y, z = F5(a), F5(b), F5(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


@given(st.fractions(max_denominator=50))
def test_rational_format_parse_round_trip(q):
    assert QQ.parse(QQ.format(q)) == q


def test_gf_parse_reduces_fractions():
    assert F5.parse("1/2") * 2 == F5(1)
    assert F5.format(F5.parse("-1")) == "4"
    with pytest.raises(ZeroDivisionError):
        F5.parse("1/5")


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(6)


def test_describe():
    assert QQ.describe() == {"kind": "QQ"}
    assert GF(7).describe() == {"kind": "GF", "p": 7}


matrices = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


def _apply(cols, x):
    out = {}
    for j, c in x.items():
        axpy(out, c, cols[j])
    return out


def _cols(rows):
    return [{i: Fraction(r[j]) for i, r in enumerate(rows) if r[j]} for j in range(len(rows[0]))]


@given(matrices)
@settings(max_examples=60)
def test_kernel_is_annihilated_and_rank_nullity(rows):
    cols = _cols(rows)
    ker = kernel(cols, len(cols))
    for v in ker:
        assert _apply(cols, v) == {}
    assert rank(cols) + len(ker) == len(cols)


@given(matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=60)
def test_solve_linear_on_image(rows, x):
    cols = _cols(rows)
    b = _apply(cols, {j: Fraction(c) for j, c in enumerate(x) if c})
    sol = solve_linear(cols, b, len(cols))
    assert sol is not None
    assert _apply(cols, sol) == b


def test_solve_linear_inconsistent():
    assert solve_linear([{0: 1}], {1: 1}, 1) is None


def test_inverse_columns():
    cols = {0: {0: 2, 1: 1}, 1: {0: 1, 1: 1}}
    inv = inverse_columns(cols, 2)
    for j in range(2):
        assert _apply(cols, inv[j]) == {j: 1}
    assert inverse_columns({0: {0: 1}, 1: {0: 2}}, 2) is None


def test_reducer_reports_dependency():
    r = Reducer(track=True)
    assert r.add({0: 1, 1: 1}, tag="a") is None
    assert r.add({1: 1}, tag="b") is None
    assert r.add({0: 2, 1: 3}, tag="c") is not None


def test_integer_pivots_stay_exact():
    r = Reducer(track=True)
    r.add({0: 3, 1: 1}, tag=0)
    for vec in r.basis.values():
        assert all(isinstance(x, Fraction) or isinstance(x, int) for x in vec.values())
    assert r.basis[0][1] == Fraction(1, 3)
    assert all(not isinstance(x, float) for v in kernel([{0: 2}, {0: 3}], 2) for x in v.values())
