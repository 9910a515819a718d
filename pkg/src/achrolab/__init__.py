"""Proper complete colourings of K_p x K_q as p x q colour matrices."""

from .bounds import check_bgen, excess, general_upper_bound, k6_bounds, matrix_excess
from .constructions import build_odd_q_matrix, build_single_clique
from .diagnostics import build_aux_graph, claim_suite
from .matrix import (
    ColourMatrix,
    MatrixError,
    bad_pairs,
    build_matrix,
    from_ids,
    is_complete,
    is_member,
    is_proper,
    pair_verdict,
    permute,
    proper_violation,
    stats,
)
from .search import Outcome, SearchConfig, achromatic_number, exists_colouring, heuristic_search

__version__ = "0.1.0"

__all__ = [
    "ColourMatrix", "MatrixError", "Outcome", "SearchConfig",
    "achromatic_number", "bad_pairs", "build_aux_graph", "build_matrix", "build_odd_q_matrix",
    "build_single_clique", "check_bgen", "claim_suite", "excess", "exists_colouring", "from_ids",
    "general_upper_bound", "heuristic_search", "is_complete", "is_member", "is_proper", "k6_bounds",
    "matrix_excess", "pair_verdict", "permute", "proper_violation", "stats",
]
