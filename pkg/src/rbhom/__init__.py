"""Exact structure-constant toolkit for Rota-Baxter family Hom-associative algebras over Q(l)."""

from .algebra import (
    Bimodule,
    FiniteSemigroup,
    HomAlgebra,
    LinearMap,
    Report,
    Violation,
    check_algebra,
    check_bimodule,
    check_morphism,
    check_subalgebra,
    semigroup_validate,
)
from .deformation import (
    Complement,
    DeformationMap,
    DeformEquivWitness,
    build_deformed,
    check_deformation,
    check_deformation_equiv,
    complement_to_deformation,
    count_index_1dim,
    deformation_to_complement,
    solve_deformation_1dim,
)
from .extending import (
    EquivWitness,
    ExtendingDatum,
    UnifiedProduct,
    build_unified_product,
    check_datum_equivalence,
    check_extending_structure,
    datum_to_extension,
    extension_to_datum,
)
from .fileformat import ParseError, load, parse, resolve, serialize
from .flag import FlagDatum, check_flag, datum_to_flag, enumerate_flags, flag_to_datum, verify_table2_row
from .matched import MatchedPair, build_bicrossed, check_factorization, check_matched_pair
from .scalars import LAMBDA, ONE, ZERO, Scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "Bimodule", "build_bicrossed", "build_deformed", "build_unified_product", "check_algebra",
    "check_bimodule", "check_datum_equivalence", "check_deformation", "check_deformation_equiv",
    "check_extending_structure", "check_factorization", "check_flag", "check_matched_pair",
    "check_morphism", "check_subalgebra", "Complement", "complement_to_deformation",
    "count_index_1dim", "datum_to_extension", "datum_to_flag", "deformation_to_complement",
    "DeformationMap", "DeformEquivWitness", "enumerate_flags", "EquivWitness", "ExtendingDatum",
    "extension_to_datum", "FiniteSemigroup", "flag_to_datum", "FlagDatum", "HomAlgebra", "LAMBDA",
    "LinearMap", "load", "MatchedPair", "ONE", "parse", "parse_scalar", "ParseError", "Report",
    "resolve", "Scalar", "semigroup_validate", "serialize", "solve_deformation_1dim",
    "UnifiedProduct", "verify_table2_row", "Violation", "ZERO",
]
