import random

import pytest
from hypothesis import given, settings, strategies as st

from dgdescent.field import QQ, GF
from dgdescent.graded import (GradedSpace, GradedMap, ContractError, DimensionError, koszul,
                              tensor_space, tensor_maps, power_shift, shift_conjugate,
                              suspension, desuspension, shift, Complex, hom_differential)
from dgdescent.generators import random_space, random_map


def test_koszul():
    assert koszul(1, 1) == -1
    assert koszul(2, 3) == 1
    assert koszul(-1, 3) == -1


def test_window_is_enforced():
    with pytest.raises(ValueError):
        GradedSpace("V", [("a", 5)], window=(-3, 3))
    with pytest.raises(ValueError):
        GradedSpace("V", [("a", 0), ("a", 1)])


def test_map_degree_is_enforced():
    V = GradedSpace("V", [("a", 0), ("b", 1)])
    with pytest.raises(ContractError):
        GradedMap(V, V, 0, {0: {1: 1}})
    GradedMap(V, V, 1, {0: {1: 1}})


def test_tensor_space_names_and_degrees():
    V = GradedSpace("V", [("a", 0), ("b", 1)])
    W = GradedSpace("W", [("c", -1)])
    T = tensor_space(V, W, V)
    assert T.dim == 4
    assert T.names[1] == "a⊗c⊗b"
    assert T.degrees[3] == 1 - 1 + 1
    assert tensor_space(T, V).factors == (V, W, V, V)


def test_compose_shape_mismatch():
    V = GradedSpace("V", [("a", 0)])
    W = GradedSpace("W", [("b", 0), ("c", 0)])
    f = GradedMap.identity(V)
    g = GradedMap.identity(W)
    with pytest.raises((DimensionError, ContractError)):
        g @ f


@pytest.mark.parametrize("n", range(1, 9))
def test_power_shift_sign(n):
    M = GradedSpace("M", [("a", 0), ("b", 1)])
    s, w = power_shift(M, n)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert w @ s == GradedMap.identity(s.source).scale(sign)


def test_suspension_inverse():
    M = GradedSpace("M", [("a", -1), ("b", 2)])
    assert desuspension(M) @ suspension(M) == GradedMap.identity(M)
    assert shift(M, 1).degrees == (-2, 1)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_tensor_interchange_law(seed):
    rng = random.Random(seed)
    sp = [random_space(rng, QQ, 2, name="S%d" % i) for i in range(6)]
    h = random_map(rng, sp[0], sp[1], rng.randint(-1, 1))
    k = random_map(rng, sp[2], sp[3], rng.randint(-1, 1))
    f = random_map(rng, sp[1], sp[4], rng.randint(-1, 1))
    g = random_map(rng, sp[3], sp[5], rng.randint(-1, 1))
    lhs = tensor_maps([f, g]) @ tensor_maps([h, k])
    assert lhs == tensor_maps([f @ h, g @ k]).scale(koszul(g.degree, h.degree))


@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.sampled_from(["up", "down"]))
@settings(max_examples=40, deadline=None)
def test_shift_conjugate_round_trip(seed, n, direction):
    rng = random.Random(seed)
    X = random_space(rng, QQ, 2, name="X")
    Y = random_space(rng, QQ, 2, name="Y")
    P = tensor_space(*([X] * n))
    deg = rng.randint(-2, 2) + 1 - n
    f = random_map(rng, P, Y, deg) if direction == "up" else random_map(rng, Y, P, deg)
    g = shift_conjugate(f, n, direction)
    assert g.degree == deg + n - 1
    assert shift_conjugate(g, n, direction, inverse=True) == f


def test_shift_conjugate_checks_l():
    X = GradedSpace("X", [("a", 0)])
    f = GradedMap.zero(tensor_space(X, X), X, 0)
    with pytest.raises(ContractError):
        shift_conjugate(f, 2, "up", l=3)


def test_complex_and_hom_differential_over_f3():
    F = GF(3)
    V = GradedSpace("V", [("a", 0), ("b", 1)], field=F)
    d = GradedMap(V, V, 1, {0: {1: F(1)}})
    C = Complex(V, d)
    f = GradedMap(V, V, -1, {1: {0: F(1)}})
    assert hom_differential(f, C.d, C.d) == GradedMap.identity(V)
    with pytest.raises(ContractError):
        Complex(V, GradedMap(V, V, 0, {0: {0: F(1)}}))
