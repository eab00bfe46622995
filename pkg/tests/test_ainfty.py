import random

import pytest
from hypothesis import given, settings, strategies as st

from dgdescent.field import QQ, GF
from dgdescent.graded import GradedSpace, GradedMap, tensor_space, ContractError
from dgdescent.algebra import truncated_polynomial
from dgdescent.ainfty import (AInftyAlgebra, AInftyCoalgebra, check_ainfty, bar_construct,
                              associative_as_ainfty, check_ainfty_coalgebra, cobar_construct,
                              AInftyComodule, check_comodule, check_homotopy_counital)
from dgdescent.generators import random_ainfty, corrupt_ainfty


def test_dual_numbers_are_ainfty():
    A = associative_as_ainfty(truncated_polynomial(QQ, "x", 0, 2))
    assert check_ainfty(A, 4).ok
    assert bar_construct(A, 4).check_d_squared().ok


def test_wrong_degree_operation_rejected():
    V = GradedSpace("V", [("a", 0)])
    with pytest.raises(ContractError):
        AInftyAlgebra(V, {3: GradedMap(tensor_space(V, V, V), V, 0, {0: {0: 1}})})


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_random_ainfty_bar_squares_to_zero(seed):
    A = random_ainfty(random.Random(seed))
    assert A.space.dim <= 4 and A.max_arity <= 3
    assert check_ainfty(A, 5).ok
    assert bar_construct(A, 4).check_d_squared().ok


@given(st.integers(0, 10 ** 6))
@settings(max_examples=10, deadline=None)
def test_random_ainfty_over_f3(seed):
    A = random_ainfty(random.Random(seed), GF(3))
    assert check_ainfty(A, 4).ok


def test_corruption_localized():
    rng = random.Random(3)
    seen = 0
    while seen < 5:
        C, j = corrupt_ainfty(rng, random_ainfty(rng))
        rep = check_ainfty(C, 5)
        if rep.ok:
            continue
        seen += 1
        bar = bar_construct(C, 5).check_d_squared()
        assert min(rep.failed_arities) == min(bar.failed_lengths)
        assert min(rep.failed_arities) in (j, j + 1, 2 * j - 1)


def _dual_coalgebra():
    C = GradedSpace("C", [("1", 0), ("c", 0)])
    k = GradedSpace("k", [("1", 0)])
    CC = tensor_space(C, C)
    delta = GradedMap(C, CC, 0, {0: {CC.flat((0, 0)): 1},
                                 1: {CC.flat((1, 0)): 1, CC.flat((0, 1)): 1}})
    eps = GradedMap(C, k, 0, {0: {0: 1}})
    return AInftyCoalgebra(C, {2: delta}, counit=eps, coaug={0: 1}), delta


def test_coalgebra_and_cobar():
    co, delta = _dual_coalgebra()
    assert check_ainfty_coalgebra(co, 4).ok
    assert cobar_construct(co, max_len=4).check_d_squared().ok


def test_regular_comodule_counital():
    co, delta = _dual_coalgebra()
    M = AInftyComodule(co, co.space, {2: delta})
    assert check_comodule(M, 4).ok
    h, rep = check_homotopy_counital(M)
    assert rep.ok


def test_noncoassociative_coalgebra_detected():
    C = GradedSpace("C", [("a", 0), ("b", 0)])
    CC = tensor_space(C, C)
    delta = GradedMap(C, CC, 0, {0: {CC.flat((0, 1)): 1}, 1: {CC.flat((0, 0)): 1}})
    assert not check_ainfty_coalgebra(AInftyCoalgebra(C, {2: delta}), 3).ok
