"""Edge-maximal planar subgraphs of non-planar graphs.

Start from a spanning tree, then add every remaining edge that keeps the
graph planar. Planarity is closed under edge deletion, so a single pass in
the chosen order already reaches an edge-maximal subgraph; the result is
re-certified afterwards anyway.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .graph import Graph, GraphError, component_graphs, is_connected, is_planar

EDGE_ORDERS = ("input", "degree", "explicit")


@dataclass(frozen=True)
class PlanarizationResult:
    subgraph: Graph
    removed_edges: tuple[tuple[int, int], ...]
    maximal: bool

    def removed_labels(self) -> list[tuple[int, int]]:
        lab = self.subgraph.labels
        return [(lab[u], lab[v]) for u, v in self.removed_edges]


def order_edges(
    g: Graph, policy: str = "input", priority: Sequence[tuple[int, int]] | None = None
) -> list[int]:
    """Edge ids of ``g`` in the order the planarizer should consider them.

    ``priority`` (label pairs) is only used by the ``explicit`` policy: listed
    edges come first in the given order, unlisted edges follow in input order.
    """
    ids = list(range(g.m))
    if policy == "input":
        return ids
    if policy == "degree":
        return sorted(ids, key=lambda i: g.degree(g.edges[i][0]) + g.degree(g.edges[i][1]))
    if policy == "explicit":
        if priority is None:
            raise ValueError("explicit edge order needs a priority list")
        ordered: list[int] = []
        seen = set()
        for a, b in priority:
            u, v = g.index_of(a), g.index_of(b)
            if not g.has_edge(u, v):
                raise GraphError(f"priority edge ({a}, {b}) is not in the graph")
            eid = g.edge_id(u, v)
            if eid not in seen:
                seen.add(eid)
                ordered.append(eid)
        return ordered + [i for i in ids if i not in seen]
    raise ValueError(f"unknown edge order {policy!r}; expected one of {EDGE_ORDERS}")


def spanning_tree(g: Graph, order: Sequence[int] | None = None) -> Graph:
    """Spanning tree picked Kruskal-style, scanning edges in ``order``."""
    if not is_connected(g):
        raise GraphError("spanning tree requires a connected graph")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for eid in order if order is not None else range(g.m):
        u, v = g.edges[eid]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(eid)
            if len(chosen) == g.n - 1:
                break
    return g.subgraph_edges(chosen)


def maximal_planar_subgraph(
    g: Graph,
    edge_order: str = "input",
    priority: Sequence[tuple[int, int]] | None = None,
) -> PlanarizationResult:
    if not is_connected(g):
        raise GraphError("planarization requires a connected graph; split components first")
    order = order_edges(g, edge_order, priority)
    tree = spanning_tree(g, order)
    in_tree = set(tree.edges)

    H = nx.Graph()
    H.add_nodes_from(range(g.n))
    H.add_edges_from(tree.edges)
    kept = set(in_tree)
    removed = []
    for eid in order:
        e = g.edges[eid]
        if e in in_tree:
            continue
        H.add_edge(*e)
        if nx.check_planarity(H)[0]:
            kept.add(e)
        else:
            H.remove_edge(*e)
            removed.append(e)

    sub = g.subgraph_edges(g.edge_id(u, v) for u, v in kept)
    return PlanarizationResult(
        subgraph=sub,
        removed_edges=tuple(removed),
        maximal=_certify_maximal(sub, removed),
    )


def _certify_maximal(sub: Graph, removed: Sequence[tuple[int, int]]) -> bool:
    if not is_planar(sub):
        return False
    base = list(sub.edges)
    return all(not is_planar(sub.with_edges(base + [e])) for e in removed)


def planarize_components(
    g: Graph, edge_order: str = "input", priority=None
) -> tuple[Graph, list[tuple[int, int]]]:
    """Planarize every non-planar component; returns the spanning subgraph and
    the removed edges (index pairs of ``g``)."""
    kept: list[tuple[int, int]] = []
    removed: list[tuple[int, int]] = []
    for sub, back in component_graphs(g):
        if is_planar(sub):
            kept.extend((back[u], back[v]) for u, v in sub.edges)
            continue
        local_priority = priority if edge_order == "explicit" else None
        res = maximal_planar_subgraph(sub, edge_order, _restrict(sub, local_priority))
        kept.extend((back[u], back[v]) for u, v in res.subgraph.edges)
        removed.extend((back[u], back[v]) for u, v in res.removed_edges)
    keep = set(kept)
    return g.with_edges([e for e in g.edges if e in keep]), removed


def _restrict(sub: Graph, priority):
    if priority is None:
        return None
    labels = set(sub.labels)
    return [(a, b) for a, b in priority if a in labels and b in labels]
