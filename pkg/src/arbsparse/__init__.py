"""Bounded-degree sparsifiers for matching, vertex cover and independent set
on graphs of bounded arboricity or average degree."""

from arbsparse._jit import JIT_ENABLED
from arbsparse.errors import ArbsparseError, CapabilityError, InputError, ParseError
from arbsparse.graph import (
    DensityReport,
    Graph,
    HighLowSplit,
    Subgraph,
    degeneracy,
    density_report,
    exact_arboricity,
    generate_forest_union,
    generate_hub_forest_union,
    generate_random_graph,
    induced_subgraph,
    load_graph,
    neighbor,
    save_graph,
    split_high_low,
)
from arbsparse.solvers import (
    IndependentSet,
    Matching,
    VertexCover,
    approx_matching_short_augment,
    assemble_vc,
    eta_maximality,
    greedy_is_min_degree,
    greedy_maximal_matching,
    max_is_exact,
    max_matching_exact,
    min_vc_exact,
    vc_from_matching,
    verify_is,
    verify_matching,
    verify_vc,
)
from arbsparse.sparsify import (
    IsSparsifier,
    MatchingSparsifier,
    VcSparsifier,
    build_is_sparsifier,
    build_matching_sparsifier,
    build_vc_sparsifier,
    is_delta,
    matching_delta,
    vc_delta,
)

__version__ = "0.1.0"

__all__ = [
    "ArbsparseError",
    "CapabilityError",
    "DensityReport",
    "Graph",
    "HighLowSplit",
    "IndependentSet",
    "InputError",
    "IsSparsifier",
    "JIT_ENABLED",
    "Matching",
    "MatchingSparsifier",
    "ParseError",
    "Subgraph",
    "VcSparsifier",
    "VertexCover",
    "approx_matching_short_augment",
    "assemble_vc",
    "build_is_sparsifier",
    "build_matching_sparsifier",
    "build_vc_sparsifier",
    "degeneracy",
    "density_report",
    "eta_maximality",
    "exact_arboricity",
    "generate_forest_union",
    "generate_hub_forest_union",
    "generate_random_graph",
    "greedy_is_min_degree",
    "greedy_maximal_matching",
    "induced_subgraph",
    "is_delta",
    "load_graph",
    "matching_delta",
    "max_is_exact",
    "max_matching_exact",
    "min_vc_exact",
    "neighbor",
    "save_graph",
    "split_high_low",
    "vc_delta",
    "vc_from_matching",
    "verify_is",
    "verify_matching",
    "verify_vc",
]
