import random

import pytest

from dgdescent.graded import ContractError, GradedMap
from dgdescent.cosimplicial import FiniteCover, cech_system
from dgdescent.field import QQ
from dgdescent.holim import (HolimObject, validate_holim_object, holim_compose, holim_identity,
                             random_morphism, to_ainfty_comodule, morphism_to_comodule_map,
                             crosscheck_equalizer, holim_hom_basis)
from dgdescent.ainfty import check_comodule, check_homotopy_counital, comodule_map_compose
from dgdescent.harness import holim_seeds, holim_laws, skyscraper


@pytest.fixture(scope="module")
def small():
    sys = cech_system(FiniteCover([1, 2], [[1, 2], [2]]), 2, QQ)
    return sys, holim_seeds(sys, random.Random(2))


def test_seeds_validate(small):
    sys, seeds = small
    assert len(seeds) == 3
    for o in seeds:
        assert validate_holim_object(o).ok


def test_perturbed_seed_has_higher_theta(small):
    sys, seeds = small
    assert 2 in seeds[2].theta or seeds[2].theta[1] != seeds[1].theta[1]


def test_zero_theta_fails(small):
    sys, seeds = small
    o = HolimObject(sys, seeds[0].M, {})
    assert not validate_holim_object(o).ok


def test_theta_shape_checked(small):
    sys, seeds = small
    with pytest.raises(ContractError):
        HolimObject(sys, seeds[0].M, {1: GradedMap.identity(seeds[0].M.space)})


def test_laws(small):
    sys, seeds = small
    assert holim_laws(seeds, random.Random(5), 30).ok


def test_unit_and_basis(small):
    sys, seeds = small
    o = seeds[1]
    for a in holim_hom_basis(o, o, 0)[:10]:
        assert holim_compose(holim_identity(o), a) == a


def test_comodule_translation(small):
    sys, seeds = small
    c = to_ainfty_comodule(seeds[2])
    assert check_comodule(c, 4).ok
    h, rep = check_homotopy_counital(c)
    assert rep.ok
    rng = random.Random(9)
    a = random_morphism(rng, seeds[1], seeds[2], 0)
    b = random_morphism(rng, seeds[2], seeds[1], -1)
    c1, c2 = to_ainfty_comodule(seeds[1]), c
    lhs = morphism_to_comodule_map(holim_compose(b, a), c1, c1)
    rhs = comodule_map_compose(morphism_to_comodule_map(b, c2, c1),
                               morphism_to_comodule_map(a, c1, c2), sys.N + 1)
    assert lhs == rhs


def test_crosscheck(small):
    sys, seeds = small
    r = crosscheck_equalizer(seeds[:2], N=2)
    assert r.ok
    assert r.counts["pairs"] > 0


def test_skyscraper_is_a_module():
    sys = cech_system(FiniteCover([1, 2, 3], [[1, 2], [2, 3]]), 1, QQ)
    M = skyscraper(sys.base)
    assert M.dim == 4
