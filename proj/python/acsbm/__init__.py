"""Assortative-constrained degree-corrected stochastic block models."""

from ._core import (
    AssortativityMode,
    FitResult,
    Graph,
    Model,
    OmegaSolution,
    ParseError,
    PlantedGraph,
    block_counts,
    count_assortative_communities,
    fit,
    generate_ppm,
    generate_sbm,
    is_feasible,
    lambda_profile_oracle,
    log_likelihood,
    modularity,
    multi_start,
    nmi,
    read_edge_list,
    solve_constrained,
    write_edge_list,
)

__all__ = [
    "AssortativityMode",
    "FitResult",
    "Graph",
    "Model",
    "OmegaSolution",
    "ParseError",
    "PlantedGraph",
    "block_counts",
    "count_assortative_communities",
    "fit",
    "generate_ppm",
    "generate_sbm",
    "is_feasible",
    "lambda_profile_oracle",
    "log_likelihood",
    "modularity",
    "multi_start",
    "nmi",
    "read_edge_list",
    "solve_constrained",
    "write_edge_list",
]
