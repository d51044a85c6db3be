"""Branch-width and optimal branch-decompositions of planar graphs.

The decision procedure works block by block. Each 2-connected block is
series/parallel reduced to a core; cores are decided by the sphere-cut DP in
:mod:`gridset._spherecut`. The resulting decomposition is mapped back
through the reductions and glued across cut vertices at leaves incident to
the cut vertex, which never raises the width above ``max(core widths, 2)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import _spherecut
from .graph import Graph, GraphError, PlanarEmbedding, connected_components


class DecompositionError(ValueError):
    """Structural problem with a branch-decomposition, or a failed optimality gate."""

    def __init__(self, message: str, best_width: int | None = None):
        super().__init__(message)
        self.best_width = best_width


@dataclass(frozen=True)
class BranchDecomposition:
    """Unrooted ternary tree whose leaves are the graph's edges.

    Node ``i < len(leaves)`` is the leaf of graph edge ``leaves[i]`` (index
    pairs), larger ids are internal nodes. ``tree`` lists neighbours per node.
    """

    leaves: tuple[tuple[int, int], ...]
    tree: tuple[tuple[int, ...], ...]
    width: int

    @property
    def n_nodes(self) -> int:
        return len(self.tree)

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a, nb in enumerate(self.tree) for b in nb if a < b)

    def leaf_side(self, a: int, b: int) -> list[int]:
        """Leaves reachable from ``b`` once tree edge ``(a, b)`` is removed."""
        out = []
        stack = [(b, a)]
        while stack:
            x, came = stack.pop()
            if x < len(self.leaves):
                out.append(x)
            stack.extend((y, x) for y in self.tree[x] if y != came)
        return sorted(out)


def _omega(leaves, deg, side) -> frozenset[int]:
    cnt: dict[int, int] = {}
    for leaf in side:
        for v in leaves[leaf]:
            cnt[v] = cnt.get(v, 0) + 1
    return frozenset(v for v, c in cnt.items() if c < deg[v])


def _degrees(leaves) -> dict[int, int]:
    deg: dict[int, int] = {}
    for u, v in leaves:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def separators(bd: BranchDecomposition) -> dict[tuple[int, int], frozenset[int]]:
    """Middle set of every tree edge, computed from the leaves below ``b``."""
    deg = _degrees(bd.leaves)
    return {
        (a, b): _omega(bd.leaves, deg, bd.leaf_side(a, b)) for a, b in bd.tree_edges()
    }


def check_structure(g: Graph, bd: BranchDecomposition) -> None:
    if len(bd.leaves) != g.m:
        raise DecompositionError(f"expected {g.m} leaves, found {len(bd.leaves)}")
    if sorted(bd.leaves) != sorted(g.edges):
        raise DecompositionError("leaf map is not a bijection onto the graph's edges")
    n = bd.n_nodes
    for x, nb in enumerate(bd.tree):
        for y in nb:
            if not 0 <= y < n or x not in bd.tree[y]:
                raise DecompositionError(f"tree adjacency broken at node {x}")
        if x < len(bd.leaves):
            if len(nb) > 1 or (len(nb) == 0 and n > 1):
                raise DecompositionError(f"leaf {x} has degree {len(nb)}")
        elif len(nb) != 3:
            raise DecompositionError(f"internal node {x} has degree {len(nb)}")
    if n and len(bd.tree_edges()) != n - 1:
        raise DecompositionError("tree has a cycle or is disconnected")
    if n:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in bd.tree[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != n:
            raise DecompositionError("tree is disconnected")


def validate_decomposition(g: Graph, bd: BranchDecomposition) -> int:
    """Recompute every separator from the leaf sets and return the true width."""
    check_structure(g, bd)
    seps = separators(bd)
    return max((len(s) for s in seps.values()), default=0)


# ---------------------------------------------------------------------------
# construction


class _TreeBuilder:
    """Mutable tree used while assembling a decomposition."""

    def __init__(self):
        self.adj: list[set[int]] = []
        self.leaf: dict[int, object] = {}

    def node(self, label=None) -> int:
        self.adj.append(set())
        x = len(self.adj) - 1
        if label is not None:
            self.leaf[x] = label
        return x

    def link(self, a, b):
        self.adj[a].add(b)
        self.adj[b].add(a)

    def unlink(self, a, b):
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def from_split(self, split: _spherecut.CoreSplit, labels) -> int:
        """Materialise a core split; returns the top node (a leaf or degree-2 node)."""
        if split.leaf is not None:
            return self.node(labels[split.leaf])
        top = self.node()
        self.link(top, self.from_split(split.left, labels))
        self.link(top, self.from_split(split.right, labels))
        return top

    def attach_point(self, leaf: int) -> int:
        """Node on the pendant edge of ``leaf`` where another tree may hang."""
        if not self.adj[leaf]:
            return leaf
        (nb,) = self.adj[leaf]
        mid = self.node()
        self.unlink(leaf, nb)
        self.link(leaf, mid)
        self.link(mid, nb)
        return mid

    def add_sibling(self, leaf: int, label) -> int:
        new = self.node(label)
        self.link(self.attach_point(leaf), new)
        return new

    def split_leaf(self, leaf: int, label_a, label_b) -> tuple[int, int]:
        """Replace ``leaf`` by an internal node carrying two new leaves."""
        del self.leaf[leaf]
        a, b = self.node(label_a), self.node(label_b)
        if not self.adj[leaf]:
            self.link(a, b)
            return a, b
        self.link(leaf, a)
        self.link(leaf, b)
        return a, b


def _blocks(g: Graph) -> list[list[int]]:
    """Edge ids of each biconnected block, blocks ordered so that each one
    touches an earlier block of its component whenever possible."""
    G = g.to_networkx()
    blocks = []
    for comp in connected_components(g):
        if len(comp) < 2:
            continue
        sub = G.subgraph(comp)
        comp_blocks = [
            sorted(g.edge_id(u, v) for u, v in b)
            for b in nx.biconnected_component_edges(sub)
        ]
        comp_blocks.sort(key=lambda b: b[0])
        # breadth-first over the block graph from the block holding edge 0
        verts = [set(v for e in b for v in g.edges[e]) for b in comp_blocks]
        order = [0]
        seen = {0}
        covered = set(verts[0])
        while len(order) < len(comp_blocks):
            for i in range(len(comp_blocks)):
                if i not in seen and verts[i] & covered:
                    seen.add(i)
                    order.append(i)
                    covered |= verts[i]
                    break
        blocks.extend(comp_blocks[i] for i in order)
    return blocks


@dataclass
class _BlockPlan:
    edge_ids: list[int]
    reduction: _spherecut.Reduction | None
    core_n: int = 0
    core_edges: list[tuple[int, int]] | None = None
    core_keys: list[int] | None = None


def _plan(g: Graph) -> list[_BlockPlan]:
    plans = []
    for block in _blocks(g):
        if len(block) == 1:
            plans.append(_BlockPlan(block, None))
            continue
        red = _spherecut.reduce_block([g.edges[e] for e in block])
        verts = sorted({x for u, v, _ in red.core_edges for x in (u, v)})
        local = {v: i for i, v in enumerate(verts)}
        plans.append(
            _BlockPlan(
                block,
                red,
                core_n=len(verts),
                core_edges=[(local[u], local[v]) for u, v, _ in red.core_edges],
                core_keys=[key for _, _, key in red.core_edges],
            )
        )
    return plans


def _is_star_forest(g: Graph) -> bool:
    for comp in connected_components(g):
        if sum(1 for v in comp if g.degree(v) >= 2) > 1:
            return False
    return True


def _base_width(g: Graph) -> int:
    # a matching has only empty separators
    if g.m <= 1 or all(g.degree(v) <= 1 for v in range(g.n)):
        return 0
    return 1 if _is_star_forest(g) else 2


def _core_split(plan: _BlockPlan, k: int):
    return _spherecut.decide(plan.core_n, plan.core_edges, k)


def _nontrivial(plans):
    return [p for p in plans if p.core_edges is not None and len(p.core_edges) > 1]


def _require_graph(emb_or_graph) -> Graph:
    if isinstance(emb_or_graph, PlanarEmbedding):
        return emb_or_graph.graph
    if isinstance(emb_or_graph, Graph):
        return emb_or_graph
    raise TypeError("expected a PlanarEmbedding or Graph")


def branch_width_at_most(emb: PlanarEmbedding | Graph, k: int) -> bool:
    """Decide whether the embedded planar graph has branch-width <= k."""
    g = _require_graph(emb)
    if g.m < 2:
        raise GraphError("width trivially 0/1, no decision needed")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k < _base_width(g):
        return False
    cores = _nontrivial(_plan(g))
    if cores and k < 3:
        return False
    return all(_core_split(p, k) is not None for p in cores)


def _search(g: Graph):
    """Smallest feasible width and the per-core splits achieving it."""
    plans = _plan(g)
    width = _base_width(g)
    splits = {}
    for i, p in enumerate(plans):
        if p.core_edges is None or len(p.core_edges) <= 1:
            continue
        k = max(3, width)
        while True:
            split = _core_split(p, k)
            if split is not None:
                break
            k += 1
        splits[i] = split
        width = max(width, k)
    return plans, splits, width


def branch_width(emb: PlanarEmbedding | Graph) -> int:
    g = _require_graph(emb)
    return _search(g)[2]


def _assemble(g: Graph, plans, splits) -> BranchDecomposition:
    tb = _TreeBuilder()
    leaf_of_edge: dict[int, int] = {}
    for i, p in enumerate(plans):
        if p.reduction is None:
            (e,) = p.edge_ids
            leaf_of_edge[e] = tb.node(("g", e))
            continue
        if i in splits:
            top = splits[i]
            tb.link(tb.from_split(top.left, p.core_keys), tb.from_split(top.right, p.core_keys))
        else:
            (key,) = p.core_keys
            tb.node(key)
        # undo the reductions; builder labels are multigraph keys until done
        where = {lab: x for x, lab in tb.leaf.items() if not isinstance(lab, tuple)}
        for step in reversed(p.reduction.log):
            if step[0] == "parallel":
                _, kept, dropped = step
                where[dropped] = tb.add_sibling(where[kept], dropped)
            else:
                _, new, a, b = step
                where[a], where[b] = tb.split_leaf(where.pop(new), a, b)
        for key, x in where.items():
            e = p.edge_ids[key]
            tb.leaf[x] = ("g", e)
            leaf_of_edge[e] = x

    # glue blocks: across a shared cut vertex, or arbitrarily across components
    placed: set[int] = set()
    placed_edges: list[int] = []
    root_leaf = None
    for p in plans:
        block_verts = {v for e in p.edge_ids for v in g.edges[e]}
        if root_leaf is None:
            root_leaf = leaf_of_edge[p.edge_ids[0]]
            placed |= block_verts
            placed_edges.extend(p.edge_ids)
            continue
        shared = sorted(block_verts & placed)
        if shared:
            c = shared[0]
            old = next(e for e in placed_edges if c in g.edges[e])
            new = next(e for e in p.edge_ids if c in g.edges[e])
            a, b = leaf_of_edge[old], leaf_of_edge[new]
        else:
            a, b = root_leaf, leaf_of_edge[p.edge_ids[0]]
        tb.link(tb.attach_point(a), tb.attach_point(b))
        placed |= block_verts
        placed_edges.extend(p.edge_ids)

    return _freeze(g, tb, leaf_of_edge)


def _freeze(g: Graph, tb: _TreeBuilder, leaf_of_edge) -> BranchDecomposition:
    m = g.m
    relabel = {leaf_of_edge[e]: e for e in range(m)}
    nxt = m
    for x in range(len(tb.adj)):
        if x in relabel:
            continue
        if not tb.adj[x]:
            continue  # detached placeholder
        relabel[x] = nxt
        nxt += 1
    tree: list[tuple[int, ...]] = [()] * nxt
    for x, new in relabel.items():
        tree[new] = tuple(sorted(relabel[y] for y in tb.adj[x]))
    bd = BranchDecomposition(leaves=g.edges, tree=tuple(tree), width=0)
    width = validate_decomposition(g, bd)
    return BranchDecomposition(leaves=g.edges, tree=bd.tree, width=width)


def decompose(g: Graph) -> BranchDecomposition:
    """Branch-decomposition of ``g`` (planar) of width equal to its branch-width."""
    plans, splits, width = _search(g)
    bd = _assemble(g, plans, splits)
    if bd.width != width:
        raise DecompositionError(
            f"constructed width {bd.width} differs from branch-width {width}",
            best_width=bd.width,
        )
    return bd


def optimal_branch_decomposition(emb: PlanarEmbedding | Graph) -> BranchDecomposition:
    g = _require_graph(emb)
    if g.m < 2:
        raise GraphError("decomposition needs at least 2 edges")
    return decompose(g)


# ---------------------------------------------------------------------------
# rooting


@dataclass(frozen=True)
class RootedDecomposition:
    """Rooted tree T' obtained by subdividing a tree edge with ``z`` and
    hanging the root ``r`` off it.

    Tree edges of T' are named by their lower endpoint: edge ``x`` joins ``x``
    to ``parent[x]``. ``omega[x]`` is the sorted middle set of edge ``x``
    (empty for ``z``, unused for ``r``), ``children[x]`` its child edges.
    """

    bd: BranchDecomposition
    split_edge: tuple[int, int]
    z: int
    r: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    omega: tuple[tuple[int, ...], ...]

    def is_leaf(self, x: int) -> bool:
        return x < len(self.bd.leaves)

    def leaf_edge(self, x: int) -> tuple[int, int]:
        return self.bd.leaves[x]

    def postorder(self) -> list[int]:
        """Edges of T' (by lower node) bottom-up, ending with ``z``."""
        out = []
        stack = [(self.z, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children[x]):
                stack.append((c, False))
        return out

    def width(self) -> int:
        return max(len(w) for w in self.omega)


def centroid_edge(bd: BranchDecomposition) -> tuple[int, int]:
    """Tree edge from the centroid towards its heaviest branch."""
    edges = bd.tree_edges()
    if not edges:
        raise DecompositionError("decomposition has no tree edge to split")
    n = bd.n_nodes
    best = None
    for x in range(n):
        branches = sorted(
            ((len(_subtree(bd, x, y)), -y) for y in bd.tree[x]), reverse=True
        )
        key = (branches[0][0], x)
        if best is None or key < best[0]:
            best = (key, x, -branches[0][1])
    _, x, y = best
    return (min(x, y), max(x, y))


def _subtree(bd, a, b):
    seen = [b]
    stack = [(b, a)]
    while stack:
        x, came = stack.pop()
        for y in bd.tree[x]:
            if y != came:
                seen.append(y)
                stack.append((y, x))
    return seen


def root_decomposition(
    bd: BranchDecomposition, split_edge: tuple[int, int] | None = None
) -> RootedDecomposition:
    if split_edge is None:
        split_edge = centroid_edge(bd)
    u, v = split_edge
    if not (0 <= u < bd.n_nodes and v in bd.tree[u]):
        raise DecompositionError(f"{split_edge} is not an edge of the decomposition tree")
    z, r = bd.n_nodes, bd.n_nodes + 1
    parent = [-1] * (bd.n_nodes + 2)
    children: list[list[int]] = [[] for _ in range(bd.n_nodes + 2)]
    parent[z] = r
    children[r] = [z]
    children[z] = sorted((u, v))
    for top in (u, v):
        parent[top] = z
        stack = [top]
        while stack:
            x = stack.pop()
            for y in bd.tree[x]:
                if y == parent[x] or (x == top and y in (u, v)):
                    continue
                parent[y] = x
                children[x].append(y)
                stack.append(y)
    deg = _degrees(bd.leaves)
    omega: list[tuple[int, ...]] = [()] * (bd.n_nodes + 2)
    below: list[dict[int, int]] = [dict() for _ in range(bd.n_nodes + 2)]
    rooted = RootedDecomposition(
        bd=bd,
        split_edge=(min(u, v), max(u, v)),
        z=z,
        r=r,
        parent=tuple(parent),
        children=tuple(tuple(sorted(c)) for c in children),
        omega=(),
    )
    for x in rooted.postorder():
        cnt = below[x]
        if x < len(bd.leaves):
            for w in bd.leaves[x]:
                cnt[w] = cnt.get(w, 0) + 1
        for c in rooted.children[x]:
            for w, k in below[c].items():
                cnt[w] = cnt.get(w, 0) + k
            below[c] = {}
        omega[x] = tuple(sorted(w for w, k in cnt.items() if k < deg[w]))
    return RootedDecomposition(
        bd=bd,
        split_edge=rooted.split_edge,
        z=z,
        r=r,
        parent=rooted.parent,
        children=rooted.children,
        omega=tuple(omega),
    )


# ---------------------------------------------------------------------------
# interchange format


def write_decomposition(g: Graph, bd: BranchDecomposition) -> str:
    lines = [f"bd {len(bd.leaves)} {bd.width}"]
    for i, (u, v) in enumerate(bd.leaves):
        lines.append(f"leaf {i} {g.labels[u]} {g.labels[v]}")
    for a, b in bd.tree_edges():
        lines.append(f"tedge {a} {b}")
    return "\n".join(lines) + "\n"


def read_decomposition(text: str, g: Graph) -> BranchDecomposition:
    header = None
    leaves: dict[int, tuple[int, int]] = {}
    tedges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        try:
            if parts[0] == "bd" and len(parts) == 3:
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "leaf" and len(parts) == 4:
                u, v = g.index_of(int(parts[2])), g.index_of(int(parts[3]))
                leaves[int(parts[1])] = (min(u, v), max(u, v))
            elif parts[0] == "tedge" and len(parts) == 3:
                tedges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(raw)
        except (ValueError, KeyError) as exc:
            raise DecompositionError(f"line {lineno}: cannot parse {raw!r}") from exc
    if header is None:
        raise DecompositionError("missing 'bd' header line")
    n_leaves, width = header
    if sorted(leaves) != list(range(n_leaves)):
        raise DecompositionError("leaf ids must be 0..|E|-1")
    n = max([n_leaves - 1] + [max(a, b) for a, b in tedges]) + 1
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in tedges:
        adj[a].append(b)
        adj[b].append(a)
    bd = BranchDecomposition(
        leaves=tuple(leaves[i] for i in range(n_leaves)),
        tree=tuple(tuple(sorted(x)) for x in adj),
        width=width,
    )
    actual = validate_decomposition(g, bd)
    if actual != width:
        raise DecompositionError(f"header width {width} but separators give {actual}")
    return bd


def decomposition_from_tree(
    leaves: Sequence[tuple[int, int]], tree_edges: Iterable[tuple[int, int]], n_nodes: int
) -> BranchDecomposition:
    """Wrap raw tree data; width is filled in by the caller via validation."""
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for a, b in tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    return BranchDecomposition(
        leaves=tuple(leaves), tree=tuple(tuple(sorted(x)) for x in adj), width=0
    )

