"""Coercion of the graph inputs the estimators accept."""
from __future__ import annotations

import numbers

import networkx as nx
import numpy as np

from .graph import Graph, build_graph, from_index_edges
from .ingest import CaseFile


def check_graph(X) -> Graph:
    """Turn ``X`` into a :class:`Graph`.

    Accepted: a :class:`Graph`, a :class:`CaseFile`, a networkx graph with
    integer nodes, a square symmetric 0/1 adjacency matrix (dense or scipy
    sparse), or an iterable of integer label pairs. An array with two columns
    is always read as an edge list, so 2x2 adjacency matrices must be sparse.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, CaseFile):
        return X.graph()
    if isinstance(X, nx.Graph):
        if X.is_directed():
            raise ValueError("directed graphs are not supported")
        if not all(isinstance(v, numbers.Integral) for v in X.nodes):
            raise TypeError("networkx graph nodes must be integers")
        return build_graph(X.edges(), X.nodes())
    if hasattr(X, "tocoo"):
        coo = X.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {coo.shape}")
        return _from_matrix(coo.shape[0], zip(coo.row.tolist(), coo.col.tolist()),
                            coo.toarray())
    if isinstance(X, np.ndarray) and X.ndim == 2 and X.shape[0] == X.shape[1] and X.shape[1] != 2:
        rows, cols = np.nonzero(X)
        return _from_matrix(X.shape[0], zip(rows.tolist(), cols.tolist()), X)
    pairs = [tuple(p) for p in X]
    if any(len(p) != 2 for p in pairs):
        raise ValueError("edge list entries must be pairs")
    return build_graph(pairs)


def _from_matrix(n, nonzero, dense) -> Graph:
    A = np.asarray(dense)
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    if not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    if n == 0:
        raise ValueError("empty graph")
    return from_index_edges(n, [(i, j) for i, j in nonzero if i < j])
