import random

import pytest

from dgdescent.field import QQ, GF
from dgdescent.graded import ContractError, GradedMap
from dgdescent.algebra import free_module
from dgdescent.cosimplicial import FiniteCover, cech_system
from dgdescent.descent import (DescentDatum, canonical_datum, validate_descent, iso_iff_unit,
                               descent_to_comodule, comodule_to_descent, validate_strict_comodule,
                               barr_beck_roundtrip, point_module, f2_sweep,
                               holim_matches_descent, twisted_datum, datum_morphisms,
                               comodule_morphisms, same_span)
from dgdescent.harness import random_automorphism, barr_beck_instances


@pytest.fixture(scope="module")
def sys3():
    return cech_system(FiniteCover([1, 2, 3], [[1, 2], [2, 3]]), 2, QQ)


def test_canonical_datum(sys3):
    d = canonical_datum(sys3, free_module(sys3.base, 1))
    assert validate_descent(d).ok
    assert iso_iff_unit(d) == (True, True)
    c = descent_to_comodule(d)
    assert validate_strict_comodule(c).ok
    assert comodule_to_descent(c).theta == d.theta
    assert holim_matches_descent(d).ok


def test_descended_dimensions(sys3):
    B = sys3.base
    r = barr_beck_roundtrip(sys3, free_module(B, 1))
    assert r.ok and r.descended.dim == 3
    r = barr_beck_roundtrip(sys3, point_module(B, [0, 1, 0]))
    assert r.ok and r.descended.dim == 1


def test_zero_theta_is_not_a_datum(sys3):
    X = point_module(sys3.base, [1, 1, 0])
    d = canonical_datum(sys3, X)
    z = DescentDatum(sys3, d.M, GradedMap.zero(d.theta.source, d.theta.target))
    r = validate_descent(z)
    assert not r.ok


def test_iso_iff_unit_needs_cocycle(sys3):
    X = point_module(sys3.base, [1, 1, 0])
    d = canonical_datum(sys3, X)
    bad = DescentDatum(sys3, d.M, d.theta.scale(2))
    with pytest.raises(ContractError):
        iso_iff_unit(bad)


def test_twisted_datum_is_isomorphic(sys3):
    X = point_module(sys3.base, [1, 2, 1])
    d = canonical_datum(sys3, X)
    g = random_automorphism(random.Random(1), d.M, QQ)
    assert g is not None
    t = twisted_datum(d, *g)
    assert validate_descent(t).ok
    assert barr_beck_roundtrip(sys3, X, t).ok


def test_morphisms_match(sys3):
    d = canonical_datum(sys3, point_module(sys3.base, [1, 1, 0]))
    c = descent_to_comodule(d)
    assert same_span(datum_morphisms(d, d), comodule_morphisms(c, c))


def test_f2_sweep_counts():
    r = f2_sweep()
    assert r.ok
    # modules with at most 2 summands over the 3 blocks of A
    assert r.stats["modules"] == 10
    assert r.stats["disagree"] == 0
    assert r.stats["cocycles"] >= r.stats["iso"] > 0


def test_barr_beck_over_f5():
    assert barr_beck_instances(random.Random(0), 4, GF(5)).ok
