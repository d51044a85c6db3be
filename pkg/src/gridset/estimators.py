"""scikit-learn style wrappers around the solvers.

``fit`` takes a graph in any form :func:`~gridset.validation.check_graph`
accepts, and results land in trailing-underscore attributes, so the
estimators work with ``clone``, ``get_params`` and parameter grids.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .branchdecomp import decompose, root_decomposition
from .graph import is_planar
from .planarize import EDGE_ORDERS, planarize_components
from .solve import SOLVERS, solve
from .validation import check_graph


class DominatingSetSolver(BaseEstimator):
    """Minimum dominating set (PMU placement) of a power-grid graph.

    Parameters
    ----------
    solver : {"bd", "greedy", "bnb", "brute"}
        ``bd`` runs the branch-decomposition pipeline, exact on planar graphs.
    edge_order : {"input", "degree", "explicit"}
        Order in which the planarizer tries to keep edges of non-planar graphs.
    priority : list of (int, int), optional
        Label pairs tried first when ``edge_order="explicit"``.
    time_budget : float or None
        Seconds allowed for ``bnb`` before it returns its incumbent.

    Attributes
    ----------
    dominating_set_ : tuple of int
        Chosen vertices as external labels, ascending.
    support_ : ndarray of bool, shape (n_vertices,)
        Membership mask in dense vertex order.
    exact_ : bool
        Whether the set is certified minimum.
    report_ : SolveReport
    """

    def __init__(self, solver="bd", edge_order="input", priority=None, time_budget=60.0):
        self.solver = solver
        self.edge_order = edge_order
        self.priority = priority
        self.time_budget = time_budget

    def fit(self, X, y=None):
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.edge_order not in EDGE_ORDERS:
            raise ValueError(f"edge_order must be one of {EDGE_ORDERS}, got {self.edge_order!r}")
        g = check_graph(X)
        report = solve(
            g, self.solver, edge_order=self.edge_order, priority=self.priority,
            time_budget=self.time_budget,
        )
        self.graph_ = g
        self.report_ = report
        self.dominating_set_ = report.members
        chosen = {g.index_of(m) for m in report.members}
        self.support_ = np.array([v in chosen for v in range(g.n)], dtype=bool)
        self.n_selected_ = report.cardinality
        self.exact_ = report.exact
        self.branch_width_ = report.branch_width
        return self

    def predict(self, X=None):
        """Membership mask of the fitted graph (``X`` is accepted and ignored)."""
        check_is_fitted(self, "support_")
        return self.support_.astype(int)

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()


class BranchDecomposer(BaseEstimator):
    """Optimal branch-decomposition of a graph's planar part.

    Non-planar inputs are first reduced to an edge-maximal planar subgraph.
    ``transform`` returns the separator size of every edge of the rooted tree.
    """

    def __init__(self, edge_order="input", priority=None, split_edge=None):
        self.edge_order = edge_order
        self.priority = priority
        self.split_edge = split_edge

    def fit(self, X, y=None):
        g = check_graph(X)
        self.planar_ = is_planar(g)
        if self.planar_:
            h, removed = g, []
        else:
            h, removed = planarize_components(g, self.edge_order, self.priority)
        self.graph_ = h
        self.removed_edges_ = tuple((g.labels[a], g.labels[b]) for a, b in removed)
        self.decomposition_ = decompose(h)
        self.branch_width_ = self.decomposition_.width
        self.rooted_ = (
            root_decomposition(self.decomposition_, self.split_edge) if h.m >= 2 else None
        )
        return self

    def transform(self, X=None):
        check_is_fitted(self, "decomposition_")
        if self.rooted_ is None:
            return np.zeros(0, dtype=int)
        return np.array([len(self.rooted_.omega[x]) for x in self.rooted_.postorder()])
