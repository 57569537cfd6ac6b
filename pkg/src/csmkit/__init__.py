"""Exact coincidence site lattices and modules, similarity scales and multiplier rings."""

from __future__ import annotations

from .numberfield import (
    QQ,
    NumberField,
    NumberFieldElement,
    compare_embedded,
    minimal_polynomial,
    quadratic_field,
    sqrt_in_field,
)
from .normalforms import hnf, snf
from .linalg import solve_linear
from .gram import (
    GeneratorPresentation,
    GramModule,
    ambient_dimension,
    lattice_from_gram,
    module_from_generators,
)
from .maps import (
    CoincidenceMap,
    ScaleValue,
    SimilarityMap,
    compose,
    denominator,
    inverse,
    is_coincidence,
    is_symmetry,
    make_coincidence,
    make_similarity,
)
from .engine import (
    DivisibilityReport,
    Submodule,
    csl_square_root_witness,
    divisibility_report,
    intersect_csm,
    is_similar_sublattice_2d,
    oracle_index,
    sigma,
    sum_index,
)
from .scaling import (
    MultiplierRing,
    ScalCoset,
    ScalModule,
    coset_eq,
    coset_mul,
    coset_of,
    degree_check,
    in_scal_field,
    multiplier_ring,
    phi_kernel_test,
    scal_module_of_map,
)

__all__ = [
    "hnf",
    "snf",
    "solve_linear",
    "QQ",
    "NumberField",
    "NumberFieldElement",
    "compare_embedded",
    "minimal_polynomial",
    "quadratic_field",
    "sqrt_in_field",
    "GeneratorPresentation",
    "GramModule",
    "ambient_dimension",
    "lattice_from_gram",
    "module_from_generators",
    "CoincidenceMap",
    "ScaleValue",
    "SimilarityMap",
    "compose",
    "denominator",
    "inverse",
    "is_coincidence",
    "is_symmetry",
    "make_coincidence",
    "make_similarity",
    "DivisibilityReport",
    "Submodule",
    "csl_square_root_witness",
    "divisibility_report",
    "intersect_csm",
    "is_similar_sublattice_2d",
    "oracle_index",
    "sigma",
    "sum_index",
    "MultiplierRing",
    "ScalCoset",
    "ScalModule",
    "coset_eq",
    "coset_mul",
    "coset_of",
    "degree_check",
    "in_scal_field",
    "multiplier_ring",
    "phi_kernel_test",
    "scal_module_of_map",
]

__version__ = "0.1.0"
