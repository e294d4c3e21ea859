"""Power-series quotients, Koszul complexes and the exterior action on Ext."""

from .exterior import exterior_power, wedge
from .koszul import (
    ExtReport,
    KoszulComplex,
    LocalSequence,
    canonical_division,
    check_comparison_chain_map,
    cohomology_degree_map,
    generation_verdict,
    graded_regularity_probe,
    is_part_of_regular_system,
    koszul_ext_dims,
    linear_part,
    yoneda_action,
)
from .poly import Poly, PolyRing

__all__ = [
    "ExtReport", "KoszulComplex", "LocalSequence", "Poly", "PolyRing", "canonical_division",
    "check_comparison_chain_map", "cohomology_degree_map", "exterior_power", "generation_verdict",
    "graded_regularity_probe", "is_part_of_regular_system", "koszul_ext_dims", "linear_part",
    "wedge", "yoneda_action",
]
