"""Exact computations with graded algebras, A∞-structures, cosimplicial
systems of dg-modules, their homotopy limits and classical descent."""

from .field import Field, QQ, GF, Fp
from .graded import (GradedSpace, GradedMap, Complex, ContractError, DimensionError, koszul,
                     tensor_space, tensor_maps, shift, suspension, desuspension, power_shift,
                     shift_conjugate, hom_differential)
from .report import Report
from .algebra import (DgAlgebra, DgModule, AlgebraMap, ground_algebra, truncated_polynomial,
                      product_algebra, free_module, extend_scalars, restrict_scalars,
                      tensor_over, validate_dg_algebra, validate_module)
from .dgcat import ModuleCategory, FreeDgCategory, validate_dgcat, h0_invertible
from .ainfty import (AInftyAlgebra, AInftyCoalgebra, AInftyComodule, ComoduleMap, check_ainfty,
                     bar_construct, cobar_construct, check_ainfty_coalgebra, check_comodule,
                     check_homotopy_counital)
from .cosimplicial import (OrdinalMap, CosimplicialSystem, FiniteCover, cech_system,
                           validate_cosimplicial, AffineModel)
from .simplex import (simplex_category, AfunObject, AfunMorphism, afun_compose,
                      afun_differential, afun_identity, validate_afun_object)
from .holim import (HolimObject, HolimMorphism, holim_compose, holim_differential,
                    holim_identity, validate_holim_object, to_ainfty_comodule,
                    morphism_to_comodule_map, crosscheck_equalizer, canonical_object)
from .descent import (DescentDatum, StrictComodule, validate_descent, iso_iff_unit,
                      descent_to_comodule, comodule_to_descent, descend_module,
                      barr_beck_roundtrip)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Fp",
    "GradedSpace",
    "GradedMap",
    "Complex",
    "ContractError",
    "DimensionError",
    "koszul",
    "tensor_space",
    "tensor_maps",
    "shift",
    "suspension",
    "desuspension",
    "power_shift",
    "shift_conjugate",
    "hom_differential",
    "Report",
    "DgAlgebra",
    "DgModule",
    "AlgebraMap",
    "ground_algebra",
    "truncated_polynomial",
    "product_algebra",
    "free_module",
    "extend_scalars",
    "restrict_scalars",
    "tensor_over",
    "validate_dg_algebra",
    "validate_module",
    "ModuleCategory",
    "FreeDgCategory",
    "validate_dgcat",
    "h0_invertible",
    "AInftyAlgebra",
    "AInftyCoalgebra",
    "AInftyComodule",
    "ComoduleMap",
    "check_ainfty",
    "bar_construct",
    "cobar_construct",
    "check_ainfty_coalgebra",
    "check_comodule",
    "check_homotopy_counital",
    "OrdinalMap",
    "CosimplicialSystem",
    "FiniteCover",
    "cech_system",
    "validate_cosimplicial",
    "AffineModel",
    "simplex_category",
    "AfunObject",
    "AfunMorphism",
    "afun_compose",
    "afun_differential",
    "afun_identity",
    "validate_afun_object",
    "HolimObject",
    "HolimMorphism",
    "holim_compose",
    "holim_differential",
    "holim_identity",
    "validate_holim_object",
    "to_ainfty_comodule",
    "morphism_to_comodule_map",
    "crosscheck_equalizer",
    "canonical_object",
    "DescentDatum",
    "StrictComodule",
    "validate_descent",
    "iso_iff_unit",
    "descent_to_comodule",
    "comodule_to_descent",
    "descend_module",
    "barr_beck_roundtrip",
]
