"""Simple undirected graphs, planarity testing, embeddings and medial graphs.

Every algorithm in the package works on dense vertex indices ``0..n-1``.
External labels (bus numbers) are kept on the :class:`Graph` so results can
be reported in the caller's numbering.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    """Raised for structurally invalid graph input."""


class NonPlanarError(GraphError):
    """Raised when an embedding is requested for a non-planar graph.

    ``witness`` holds the edges of a Kuratowski subgraph (as label pairs)
    when the planarity test produced one.
    """

    def __init__(self, message: str, witness: list[tuple[int, int]] | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on dense indices.

    ``edges`` keeps first-appearance order of the source data (deduplicated),
    which the planarization edge-order policy relies on.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_label_index", {lab: i for i, lab in enumerate(self.labels)}
        )
        object.__setattr__(
            self, "_edge_index", {e: i for i, e in enumerate(self.edges)}
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def index_of(self, label: int) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def label_of(self, v: int) -> int:
        return self.labels[v]

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def label_edges(self) -> list[tuple[int, int]]:
        return [(self.labels[u], self.labels[v]) for u, v in self.edges]

    def subgraph_edges(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph (same vertex set and labels) on the given edges."""
        keep = sorted(set(edge_ids))
        return from_index_edges(self.n, [self.edges[i] for i in keep], self.labels)

    def with_edges(self, edges: Sequence[tuple[int, int]]) -> "Graph":
        """Spanning graph on the same vertices with ``edges`` (index pairs)."""
        return from_index_edges(self.n, edges, self.labels)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G


def from_index_edges(
    n: int, edges: Iterable[tuple[int, int]], labels: Sequence[int] | None = None
) -> Graph:
    """Build a :class:`Graph` directly from dense index pairs.

    Loops are dropped and duplicates merged, keeping first-appearance order.
    """
    if labels is None:
        labels = tuple(range(n))
    seen: dict[tuple[int, int], None] = {}
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen[key] = None
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(
        n=n,
        edges=tuple(seen),
        labels=tuple(labels),
        adj=tuple(tuple(sorted(s)) for s in nbrs),
    )


def build_graph(
    edge_pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()
) -> Graph:
    """Relabel integer-labelled edges onto dense indices.

    Labels are assigned indices in ascending label order. ``vertices`` adds
    labels that may have no incident edge (isolated buses).
    """
    pairs = [(int(a), int(b)) for a, b in edge_pairs]
    labels = set(vertices)
    for a, b in pairs:
        labels.add(a)
        labels.add(b)
    if not labels:
        raise GraphError("empty graph")
    ordered = sorted(labels)
    index = {lab: i for i, lab in enumerate(ordered)}
    return from_index_edges(
        len(ordered), [(index[a], index[b]) for a, b in pairs], ordered
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by min vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` with labels inherited from ``g``.

    Returns the subgraph and the map from its indices back to indices of ``g``.
    """
    back = sorted(vertices)
    local = {v: i for i, v in enumerate(back)}
    edges = [
        (local[u], local[v]) for u, v in g.edges if u in local and v in local
    ]
    sub = from_index_edges(len(back), edges, [g.labels[v] for v in back])
    return sub, back


def component_graphs(g: Graph) -> list[tuple[Graph, list[int]]]:
    return [induced_subgraph(g, comp) for comp in connected_components(g)]


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


# ---------------------------------------------------------------------------
# planarity


def euler_bound_violated(g: Graph) -> bool:
    """Cheap necessary condition: a simple planar graph has |E| <= 3|V| - 6."""
    return g.n >= 3 and g.m > 3 * g.n - 6


def is_planar(g: Graph) -> bool:
    if euler_bound_violated(g):
        return False
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system of a plane graph.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order. Faces
    are closed walks given as vertex sequences; walk ``f`` traverses darts
    ``(f[i], f[i+1])``.
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]

    def n_faces(self) -> int:
        return len(self.faces)

    def euler_ok(self) -> bool:
        """Check |V| - |E| + |F| = 2 on every connected component."""
        comp_of = [0] * self.graph.n
        comps = connected_components(self.graph)
        for ci, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = ci
        V = [len(c) for c in comps]
        E = [0] * len(comps)
        F = [0] * len(comps)
        for u, _ in self.graph.edges:
            E[comp_of[u]] += 1
        for f in self.faces:
            F[comp_of[f[0]]] += 1
        for ci in range(len(comps)):
            if E[ci] == 0:
                F[ci] += 1  # isolated vertex: the sphere around it
        return all(V[i] - E[i] + F[i] == 2 for i in range(len(comps)))


def walk_faces(rotation: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Enumerate the face boundary walks of a rotation system."""
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, rot in enumerate(rotation):
        for v in rot:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                r = rotation[b]
                c = r[(pos[b][a] - 1) % len(r)]
                a, b = b, c
            faces.append(tuple(walk))
    return faces


def planar_embedding(g: Graph) -> PlanarEmbedding:
    planar, emb = nx.check_planarity(g.to_networkx(), counterexample=False)
    if not planar:
        _, kuratowski = nx.check_planarity(g.to_networkx(), counterexample=True)
        witness = sorted(
            tuple(sorted((g.labels[u], g.labels[v]))) for u, v in kuratowski.edges()
        )
        raise NonPlanarError("graph is not planar", witness)
    rotation = tuple(
        tuple(emb.neighbors_cw_order(v)) if g.adj[v] else () for v in range(g.n)
    )
    return PlanarEmbedding(graph=g, rotation=rotation, faces=tuple(walk_faces(rotation)))


@dataclass(frozen=True)
class MedialGraph:
    """Medial multigraph of a plane graph.

    Vertex ``i`` stands for source edge ``source_edges[i]``; ``edges`` holds
    one pair per face corner, so parallel pairs and loops can occur.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    source_edges: tuple[tuple[int, int], ...]

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def medial_graph(emb: PlanarEmbedding) -> MedialGraph:
    g = emb.graph
    if g.m < 2:
        raise GraphError("medial undefined for fewer than 2 edges")
    if not is_connected(_drop_isolated(g)):
        raise GraphError("medial graph requires a connected embedded graph")
    medges = []
    for face in emb.faces:
        L = len(face)
        for i in range(L):
            prev_e = g.edge_id(face[i - 1], face[i])
            next_e = g.edge_id(face[i], face[(i + 1) % L])
            medges.append((prev_e, next_e))
    return MedialGraph(n=g.m, edges=tuple(medges), source_edges=g.edges)


def _drop_isolated(g: Graph) -> Graph:
    used = sorted({v for e in g.edges for v in e})
    sub, _ = induced_subgraph(g, used)
    return sub
