"""Monitoring edge-geodetic (MEG) sets of finite simple graphs."""

from .errors import BudgetExhausted, MegError
from .graph import UNREACHABLE, DistanceOracle, EdgeId, Graph, apsp, build_graph, dist_without_edge, graph_metrics
from .monitor import (
    MegVerdict,
    forced_vertices,
    is_meg_set,
    monitoring_pairs,
    monitoring_table,
    pair_monitors_edge,
    unique_minimal_meg,
)
from .solver import SearchBudget, SolveResult, enumerate_minimal_meg_sets, meg_decision, meg_min

__all__ = [
    "BudgetExhausted",
    "DistanceOracle",
    "EdgeId",
    "Graph",
    "MegError",
    "MegVerdict",
    "SearchBudget",
    "SolveResult",
    "UNREACHABLE",
    "apsp",
    "build_graph",
    "dist_without_edge",
    "enumerate_minimal_meg_sets",
    "forced_vertices",
    "graph_metrics",
    "is_meg_set",
    "meg_decision",
    "meg_min",
    "monitoring_pairs",
    "monitoring_table",
    "pair_monitors_edge",
    "unique_minimal_meg",
]
