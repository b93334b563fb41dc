"""Exact list coloring reconfiguration with modular-width and vertex-cover kernels."""
from .graph import (
    Graph,
    Instance,
    VertexAssignment,
    are_adjacent,
    coloring_difference,
    is_proper_list_coloring,
    max_clique_size,
    restrict,
)
from .kernel_mw import IdMatrix, ReplayLog, id_matrix, identical_check, kernel_bound, kernelize_mw
from .kernel_vc import MergeLog, find_cover, kernelize_vc, min_vertex_cover, vc_kernel_bound
from .modular import (
    Kind,
    Node,
    compute_md_tree,
    evaluate,
    is_module,
    md_to_pmd,
    modular_width,
    pseudo_modular_width,
    substitute,
)
from .reduction import IsInstance, cover_bound_of_reduction, reduce_is_to_lcr, verify_reduction
from .solver import (
    SolveReport,
    StateLimitExceeded,
    brute_force_reachable,
    cover_reachable,
    lift_sequence,
    shortest_weighted,
    solve,
    validate_sequence,
)

__all__ = [
    "Graph",
    "Instance",
    "VertexAssignment",
    "are_adjacent",
    "coloring_difference",
    "is_proper_list_coloring",
    "max_clique_size",
    "restrict",
    "IdMatrix",
    "ReplayLog",
    "id_matrix",
    "identical_check",
    "kernel_bound",
    "kernelize_mw",
    "MergeLog",
    "find_cover",
    "kernelize_vc",
    "min_vertex_cover",
    "vc_kernel_bound",
    "Kind",
    "Node",
    "compute_md_tree",
    "evaluate",
    "is_module",
    "md_to_pmd",
    "modular_width",
    "pseudo_modular_width",
    "substitute",
    "IsInstance",
    "cover_bound_of_reduction",
    "reduce_is_to_lcr",
    "verify_reduction",
    "SolveReport",
    "StateLimitExceeded",
    "brute_force_reachable",
    "cover_reachable",
    "lift_sequence",
    "shortest_weighted",
    "solve",
    "validate_sequence",
]

__version__ = "0.1.0"
