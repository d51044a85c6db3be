"""Minimum dominating sets on near-planar power-grid graphs.

The main entry points are :func:`solve` (any solver, returns a report),
:func:`solve_planar_mds` (the branch-decomposition pipeline) and the
scikit-learn style :class:`DominatingSetSolver`.
"""
from .baselines import brute_force_ds, exact_bnb_ds, greedy_ds
from .branchdecomp import (
    BranchDecomposition,
    RootedDecomposition,
    branch_width,
    branch_width_at_most,
    optimal_branch_decomposition,
    root_decomposition,
    validate_decomposition,
)
from .dp import DominatingSet, solve_planar_mds, verify_dominating
from .estimators import BranchDecomposer, DominatingSetSolver
from .graph import Graph, build_graph, connected_components, is_planar, medial_graph, planar_embedding
from .ingest import load_case, parse_edge_list, parse_matpower, read_report, write_report
from .planarize import maximal_planar_subgraph, spanning_tree
from .report import SolveReport
from .solve import solve

__all__ = [
    "BranchDecomposer",
    "BranchDecomposition",
    "DominatingSet",
    "DominatingSetSolver",
    "Graph",
    "RootedDecomposition",
    "SolveReport",
    "branch_width",
    "branch_width_at_most",
    "brute_force_ds",
    "build_graph",
    "connected_components",
    "exact_bnb_ds",
    "greedy_ds",
    "is_planar",
    "load_case",
    "maximal_planar_subgraph",
    "medial_graph",
    "optimal_branch_decomposition",
    "parse_edge_list",
    "parse_matpower",
    "planar_embedding",
    "read_report",
    "root_decomposition",
    "solve",
    "solve_planar_mds",
    "spanning_tree",
    "validate_decomposition",
    "verify_dominating",
    "write_report",
]
