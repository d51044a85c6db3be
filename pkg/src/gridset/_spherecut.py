"""Exact branch-width of plane graphs by dynamic programming over nooses.

A noose is a closed curve meeting the drawing only in vertices and crossing
each face at most once; here it is a simple cycle ``v1 f1 v2 f2 ... vl fl``
in the vertex-face incidence (radial) graph. The edges split into the two
sides of the curve, and the curve's vertices contain the middle set of
that edge bipartition.

Every bridgeless connected plane graph has an optimal branch-decomposition
whose separations are all noose sides (sphere-cut decompositions). So the
graph has branch-width <= k exactly when the full edge set splits into two
noose sides that are each recursively splittable into smaller noose sides,
all nooses having at most k vertices. The recursion below decides that and
returns the witnessing tree.

The DP expects a 2-connected simple plane graph, so that every face is a
cycle and each (vertex, face) incidence is a single corner. Callers reduce
arbitrary graphs to such cores first (see :func:`reduce_block`).
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .graph import from_index_edges, planar_embedding


@dataclass
class CoreSplit:
    """Recursive split of an edge set, leaves are core edge indices."""

    leaf: int | None = None
    left: "CoreSplit | None" = None
    right: "CoreSplit | None" = None


def _corners(n, edges, faces):
    eid = {}
    for i, (u, v) in enumerate(edges):
        eid[(u, v)] = eid[(v, u)] = i
    corner = {}
    face_vertices = []
    vertex_faces = [[] for _ in range(n)]
    for fi, f in enumerate(faces):
        L = len(f)
        for i in range(L):
            v = f[i]
            key = (v, fi)
            if key in corner:
                raise ValueError("face boundary is not a cycle; graph is not 2-connected")
            corner[key] = (eid[(f[i - 1], v)], eid[(v, f[(i + 1) % L])])
            vertex_faces[v].append(fi)
        face_vertices.append(frozenset(f))
    return corner, face_vertices, vertex_faces


def enumerate_nooses(n, face_vertices, vertex_faces, k):
    """All simple radial cycles with 2..k vertices, each listed once.

    A cycle is reported as ``(vertices, faces)`` with face ``faces[i]``
    joining ``vertices[i]`` to ``vertices[i+1]``.
    """
    out = []

    def extend(start, vs, fs):
        v = vs[-1]
        for f in vertex_faces[v]:
            if f in fs:
                continue
            if len(vs) >= 2 and start in face_vertices[f]:
                # canonical form: smallest vertex first, then orientation
                if len(vs) == 2:
                    if f > fs[0]:
                        out.append((tuple(vs), tuple(fs) + (f,)))
                elif vs[1] < vs[-1]:
                    out.append((tuple(vs), tuple(fs) + (f,)))
            if len(vs) < k:
                for w in sorted(face_vertices[f]):
                    if w > start and w not in vs:
                        vs.append(w)
                        fs.append(f)
                        extend(start, vs, fs)
                        vs.pop()
                        fs.pop()

    for s in range(n):
        extend(s, [s], [])
    return out


def noose_sides(m, corner, noose):
    """Edge bitmasks of the two sides of ``noose``, or None if degenerate."""
    vs, fs = noose
    cut = set()
    for i, v in enumerate(vs):
        cut.add((v, fs[i]))
        cut.add((v, fs[i - 1]))
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for key, (a, b) in corner.items():
        if key not in cut:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    classes: dict[int, int] = {}
    for e in range(m):
        r = find(e)
        classes[r] = classes.get(r, 0) | (1 << e)
    if len(classes) != 2:
        return None
    return tuple(classes.values())


def decide(n, edges, k) -> CoreSplit | None:
    """Branch-decomposition of width <= k of a 2-connected plane core, or None."""
    m = len(edges)
    if m == 1:
        return CoreSplit(leaf=0)
    emb = planar_embedding(from_index_edges(n, edges))
    corner, fverts, vfaces = _corners(n, edges, emb.faces)

    sides = {1 << e for e in range(m)}
    for noose in enumerate_nooses(n, fverts, vfaces, k):
        pair = noose_sides(m, corner, noose)
        if pair is not None:
            sides.update(pair)

    full = (1 << m) - 1
    split: dict[int, tuple[int, int] | None] = {}
    by_edge: list[list[int]] = [[] for _ in range(m)]
    for X in sorted(sides, key=lambda x: (x.bit_count(), x)):
        if X & (X - 1):
            low = (X & -X).bit_length() - 1
            for X1 in by_edge[low]:
                if X1 & ~X == 0 and (X ^ X1) in split:
                    split[X] = (X1, X ^ X1)
                    break
            else:
                continue
        else:
            split[X] = None
        rest = X
        while rest:
            bit = rest & -rest
            by_edge[bit.bit_length() - 1].append(X)
            rest ^= bit

    for X in split:
        if X & 1 and (full ^ X) in split:
            return CoreSplit(left=_unfold(X, split), right=_unfold(full ^ X, split))
    return None


def _unfold(X, split) -> CoreSplit:
    parts = split[X]
    if parts is None:
        return CoreSplit(leaf=X.bit_length() - 1)
    return CoreSplit(left=_unfold(parts[0], split), right=_unfold(parts[1], split))


# ---------------------------------------------------------------------------
# series/parallel reduction of a 2-connected block


@dataclass
class Reduction:
    """Outcome of reducing a block.

    ``core_edges`` are (u, v, key) triples over block vertex labels, ``log``
    records ("parallel", kept, dropped) and ("series", new, a, b) steps in
    execution order, where keys name multigraph edges.
    """

    core_edges: list[tuple[int, int, int]]
    log: list[tuple]


def reduce_block(edges: list[tuple[int, int]]) -> Reduction:
    """Strip parallel edges and suppress degree-2 vertices until neither applies.

    Both operations keep branch-width unchanged as long as it is at least 2,
    and the core left over is a simple graph of minimum degree 3 or a single
    edge. Keys ``0..len(edges)-1`` are the input edges.
    """
    M = nx.MultiGraph()
    for key, (u, v) in enumerate(edges):
        M.add_edge(u, v, key=key)
    next_key = len(edges)
    log: list[tuple] = []
    changed = True
    while changed:
        changed = False
        for u, v in sorted({(min(a, b), max(a, b)) for a, b in M.edges()}):
            keys = sorted(M[u][v])
            for extra in keys[1:]:
                M.remove_edge(u, v, key=extra)
                log.append(("parallel", keys[0], extra))
                changed = True
        for v in sorted(M.nodes()):
            if M.number_of_nodes() <= 2 or M.degree(v) != 2:
                continue
            inc =sorted(M.edges(v, keys=True), key=lambda t: t[2])
            (x1, y1, k1), (x2, y2, k2) = inc
            a = y1 if x1 == v else x1
            b = y2 if x2 == v else x2
            if a == b:
                continue  # two parallel edges to one neighbour; parallel rule handles it
            M.remove_node(v)
            M.add_edge(a, b, key=next_key)
            log.append(("series", next_key, k1, k2))
            next_key += 1
            changed = True
    core = sorted((min(u, v), max(u, v), key) for u, v, key in M.edges(keys=True))
    return Reduction(core_edges=core, log=log)
