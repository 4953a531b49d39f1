"""Simplicial complexes: validation, flag predicates, subdivision, homology."""
from .flag import empty_squares, is_flag, is_flag_no_square, non_flag_cliques
from .homology import (
    CellComplex,
    HomologyProfile,
    euler_characteristic,
    homology,
    invariant_factors,
)
from .simplicial import (
    SimplicialComplex,
    Subcomplex,
    cliques,
    cone,
    link,
    validate_complex,
)
from .subdivision import barycentric_subdivision, make_flag_no_square

__all__ = [
    "CellComplex",
    "HomologyProfile",
    "SimplicialComplex",
    "Subcomplex",
    "barycentric_subdivision",
    "cliques",
    "cone",
    "empty_squares",
    "euler_characteristic",
    "homology",
    "invariant_factors",
    "is_flag",
    "is_flag_no_square",
    "link",
    "make_flag_no_square",
    "non_flag_cliques",
    "validate_complex",
]
