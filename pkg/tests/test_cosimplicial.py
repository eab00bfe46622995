import itertools

import pytest
from hypothesis import given, strategies as st

from dgdescent.field import QQ, GF
from dgdescent.algebra import truncated_polynomial
from dgdescent.graded import ContractError
from dgdescent.ainfty import check_ainfty_coalgebra
from dgdescent.cosimplicial import (OrdinalMap, FiniteCover, cech_system, validate_cosimplicial,
                                    compose_elementary, AffineModel)


def _maps(m, n):
    for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield OrdinalMap(m, n, vals)


@pytest.mark.parametrize("m,n", [(0, 2), (1, 2), (2, 2), (3, 2), (2, 3), (1, 3)])
def test_factorization_recomposes(m, n):
    for f in _maps(m, n):
        assert compose_elementary(f.factor(), m) == f


@given(st.integers(1, 4), st.data())
def test_cosimplicial_identities_on_ordinals(n, data):
    j = data.draw(st.integers(1, n + 1))
    i = data.draw(st.integers(0, j - 1))
    d = OrdinalMap.coface
    assert d(n + 1, j) @ d(n, i) == d(n + 1, i) @ d(n, j - 1)


def test_head_tail_vertex():
    assert OrdinalMap.head(1, 3).values == (0, 1)
    assert OrdinalMap.tail(1, 3).values == (2, 3)
    assert OrdinalMap.vertex(3, 2).values == (2,)
    assert OrdinalMap.identity(2).is_identity()


def _count(cover, n):
    # independent oracle: Σ_s (number of opens containing s)^(n+1)
    return sum(sum(s in U for U in cover.opens) ** (n + 1) for s in cover.points)


@pytest.mark.parametrize("points,opens", [
    ([1, 2, 3], [[1, 2], [2, 3]]),
    ([1, 2], [[1, 2], [2]]),
    ([1, 2, 3], [[1, 2, 3], [2], [3]]),
])
def test_cech_dimensions(points, opens):
    cover = FiniteCover(points, opens)
    sys = cech_system(cover, 3, QQ)
    assert [L.dim for L in sys.levels] == [_count(cover, n) for n in range(4)]
    assert [L.dim for L in sys.levels] == [cover.intersection_count(n) for n in range(4)]
    assert validate_cosimplicial(sys).ok


def test_three_point_literal_dimensions():
    sys = cech_system(FiniteCover([1, 2, 3], [[1, 2], [2, 3]]), 3, QQ)
    assert [L.dim for L in sys.levels] == [4, 6, 10, 18]


def test_nilpotent_coefficients_double_dimensions():
    R = truncated_polynomial(QQ, "x", 0, 2)
    sys = cech_system(FiniteCover([1, 2, 3], [[1, 2], [2, 3]], R), 2)
    assert [L.dim for L in sys.levels] == [8, 12, 20]
    assert validate_cosimplicial(sys).ok


def test_cover_must_cover():
    with pytest.raises(ContractError):
        FiniteCover([1, 2, 3], [[1, 2]])


def test_affine_coalgebra_over_f2():
    sys = cech_system(FiniteCover([1, 2], [[1, 2], [2]]), 3, GF(2))
    co = AffineModel(sys).coalgebra()
    assert check_ainfty_coalgebra(co, 4).ok
