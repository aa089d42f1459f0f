"""Influence maximization under the coordination game threshold model."""

from ._core import (
    ContractViolation,
    GuardExceeded,
    Graph,
    ParseError,
    ThresholdModel,
    brute_force_opt,
    check_monotone_submodular,
    degree_heuristic,
    delta_from_payoffs,
    estimate_sigma_mc,
    estimate_sigma_snapshots,
    exact_sigma,
    find_submodularity_violation,
    greedy,
    greedy_pp,
    load_edge_list,
    pagerank_heuristic,
    pagerank_scores,
    preferential_attachment,
    random_heuristic,
    requirement_for,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
