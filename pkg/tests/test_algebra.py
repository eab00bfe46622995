import pytest

from dgdescent.field import QQ, GF
from dgdescent.graded import GradedMap, tensor_space
from dgdescent.algebra import (ground_algebra, truncated_polynomial, exterior_algebra,
                               product_algebra, free_module, validate_dg_algebra, validate_module,
                               AlgebraMap, validate_algebra_map, extend_scalars, restrict_scalars,
                               tensor_over, module_hom_basis, module_from_actions, DgAlgebra)
from dgdescent.algebra import GradedSpace


@pytest.mark.parametrize("A", [
    ground_algebra(QQ),
    truncated_polynomial(QQ, "x", 0, 3),
    truncated_polynomial(GF(2), "x", 2, 2),
    exterior_algebra(QQ, "e", -1),
])
def test_catalog_algebras_validate(A):
    assert validate_dg_algebra(A).ok


def test_exterior_generator_squares_to_zero():
    E = exterior_algebra(QQ, "e", -1)
    e = E.space.index["e"]
    assert E.mul({e: 1}, {e: 1}) == {}


def test_nonassociative_table_is_rejected():
    V = GradedSpace("V", [("1", 0), ("a", 0), ("b", 0)])
    T = tensor_space(V, V)
    cols = {}
    for i in range(3):
        cols[T.flat((0, i))] = {i: 1}
        cols[T.flat((i, 0))] = {i: 1}
    cols[T.flat((1, 1))] = {2: 1}
    cols[T.flat((2, 1))] = {1: 1}
    A = DgAlgebra(V, GradedMap(T, V, 0, cols), {0: 1})
    r = validate_dg_algebra(A)
    assert not r.ok


def test_product_blocks():
    k = ground_algebra(QQ)
    D = truncated_polynomial(QQ, "x", 0, 2)
    P = product_algebra([("p", k), ("q", D)])
    assert P.dim == 3
    assert [b[0] for b in P.blocks] == ["p", "q"]
    assert validate_dg_algebra(P).ok


def _restriction():
    k = ground_algebra(QQ)
    B = product_algebra([(s, k) for s in "12"], "B")
    A = product_algebra([("a1", k), ("a2", k), ("b2", k)], "A")
    phi = AlgebraMap(B, A, GradedMap(B.space, A.space, 0, {0: {0: 1}, 1: {1: 1, 2: 1}}))
    return B, A, phi


def test_algebra_map_and_extension_dimensions():
    B, A, phi = _restriction()
    assert validate_algebra_map(phi).ok
    X = free_module(B, 2, shifts=[0, 1])
    assert validate_module(X).ok
    E = extend_scalars(phi, X)
    assert E.dim == 2 * A.dim
    assert validate_module(E).ok


def test_tensor_over_base():
    B, A, phi = _restriction()
    R = restrict_scalars(phi, A.as_module())
    from dgdescent.algebra import right_via
    T = tensor_over(right_via(phi, A.as_module()), R, B)
    # A ⊗_B A: block 1 gives 1, block 2 gives 2 x 2
    assert T.dim == 1 + 4


def test_module_hom_basis_is_linear():
    D = truncated_polynomial(QQ, "x", 0, 2)
    M = D.as_module()
    basis = module_hom_basis(M, M, 0)
    # End_D(D) = D
    assert len(basis) == 2


def test_invalid_module_detected():
    D = truncated_polynomial(QQ, "x", 0, 2)
    sp = GradedSpace("M", [("m", 0)])
    # x acting as identity on a one-dimensional space breaks x^2 = 0
    M = module_from_actions(D, sp, {(0, 0): {0: 1}, (1, 0): {0: 1}})
    assert not validate_module(M).ok
