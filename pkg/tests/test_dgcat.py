import pytest

from dgdescent.field import QQ
from dgdescent.graded import ContractError
from dgdescent.dgcat import FreeDgCategory, PathElement, validate_dgcat, h0_invertible
from dgdescent.simplex import simplex_category, demo_target


def _arrow():
    gens = {"f": ("x", "y", 0), "h": ("x", "y", -1)}
    d = {"h": PathElement("x", "y", 0, {("f",): QQ(1)})}
    return FreeDgCategory(["x", "y"], gens, d, QQ, (-2, 1), 3)


def test_free_category_axioms():
    cat = _arrow()
    assert cat.check_d_squared().ok
    assert validate_dgcat(cat, cat.objects, [-1, 0]).ok


def test_free_category_rejects_bad_differential_degree():
    gens = {"f": ("x", "y", 0), "h": ("x", "y", 0)}
    with pytest.raises(ContractError):
        FreeDgCategory(["x", "y"], gens, {"h": PathElement("x", "y", 1, {("f",): QQ(1)})}, QQ)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simplex_category_squares_to_zero(n):
    cat = simplex_category(n, max_len=n + 1)
    assert cat.check_d_squared().ok
    assert len(cat.generators) == 2 ** (n + 1) - n - 2


def test_h0_invertibility():
    cat, L, C = demo_target()
    one = cat.identity(C)
    assert h0_invertible(cat, one, C, C) is not None
    # the cone is contractible, so a line cannot be equivalent to it
    incl = cat.hom_basis(L, C, 0)[0]
    assert h0_invertible(cat, incl, L, C) is None


def test_module_category_axioms():
    cat, L, C = demo_target()
    assert validate_dgcat(cat, [L, C], [-1, 0, 1]).ok
