import random

import pytest

from dgdescent.report import Report
from dgdescent.simplex import (demo_target, constant_functor, strict_functor, bent_functor,
                               AfunObject, AfunMorphism, validate_afun_object, afun_hom_basis,
                               random_afun_morphism, afun_laws, afun_compose, afun_identity,
                               object_residue)
from dgdescent.graded import ContractError


@pytest.fixture(scope="module")
def target():
    return demo_target()


def test_constant_and_strict_functors_valid(target):
    cat, L, C = target
    incl = cat.hom_basis(L, C, 0)[0]
    for n in (1, 2, 3):
        assert validate_afun_object(constant_functor(cat, C, n)).ok
        F = strict_functor(cat, [L] + [C] * n, [None, incl] + [cat.identity(C)] * (n - 1))
        assert validate_afun_object(F).ok


def test_circle_condition(target):
    cat, L, C = target
    incl = cat.hom_basis(L, C, 0)[0]
    F = strict_functor(cat, [L, C], [None, incl])
    assert validate_afun_object(F).ok
    assert not validate_afun_object(F, circle=True).ok
    assert validate_afun_object(constant_functor(cat, C, 2), circle=True).ok


def test_bent_functor(target):
    cat, L, C = target
    h = cat.hom_basis(C, C, -1)[0]
    F = bent_functor(cat, C, h)
    assert validate_afun_object(F).ok
    # f_02 = id - d(h) = 0 because the cone is contractible
    assert cat.is_zero(F.comps[(0, 2)])


def test_broken_functor_detected(target):
    cat, L, C = target
    one = cat.identity(C)
    F = AfunObject(cat, [C] * 3, {(0, 1): one, (1, 2): one, (0, 2): one.scale(2)})
    assert not validate_afun_object(F).ok
    assert (0, 1, 2) in object_residue(F)


def test_component_degree_checked(target):
    cat, L, C = target
    F = constant_functor(cat, C, 1)
    with pytest.raises(ContractError):
        AfunMorphism(F, F, 0, {(0, 1): cat.identity(C)})


def test_identity_is_unit(target):
    cat, L, C = target
    F = constant_functor(cat, C, 2)
    for a in afun_hom_basis(F, F, 0):
        assert afun_compose(afun_identity(F), a).equal(a)


def test_laws_random_n3(target):
    cat, L, C = target
    rng = random.Random(4)
    objs = [constant_functor(cat, C, 3), constant_functor(cat, L, 3)]
    pairs = {(a, b): [random_afun_morphism(rng, objs[a], objs[b], d) for d in (-1, 0, 1)]
             for a in range(2) for b in range(2)}
    assert afun_laws(pairs, Report("laws")).ok
