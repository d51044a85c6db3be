"""Minimum dominating sets by dynamic programming over a rooted branch-decomposition.

Each tree edge ``e`` of T' carries a table indexed by colorings of its
middle set: BLACK (in the set), WHITE (dominated inside the subgraph below
``e``) and GREY (not in the set, domination left open). A coloring is
encoded as a base-3 integer over the sorted middle set, first vertex most
significant, so index order is lexicographic order.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Sequence

from .branchdecomp import RootedDecomposition, decompose, root_decomposition
from .graph import Graph, component_graphs, is_planar
from .planarize import maximal_planar_subgraph
from .report import SolveReport

WHITE, GREY, BLACK = 0, 1, 2

# Saturating infinity; larger than any vertex count we can handle.
INF = 2**31 - 1


class StructuralError(ValueError):
    """Tables or decomposition inconsistent with the DP's preconditions."""


class InconsistentSolution(RuntimeError):
    """The solver produced a set that fails verification."""


def encode(colors: Sequence[int]) -> int:
    idx = 0
    for c in colors:
        idx = idx * 3 + c
    return idx


def decode(idx: int, width: int) -> tuple[int, ...]:
    out = [0] * width
    for i in range(width - 1, -1, -1):
        idx, out[i] = divmod(idx, 3)
    return tuple(out)


@dataclass
class ColorTable:
    """Cost table for one T' edge.

    ``choice[c]`` is the traceback payload: for a leaf edge, the chosen
    vertex set; for an internal edge, the child coloring pair ``(c1, c2)``.
    """

    omega: tuple[int, ...]
    cost: list[int]
    choice: list | None = None

    def __len__(self):
        return len(self.cost)

    def __getitem__(self, colors: Sequence[int]) -> int:
        return self.cost[encode(colors)]


@dataclass(frozen=True)
class DominatingSet:
    vertices: tuple[int, ...]
    valid: bool

    @property
    def cardinality(self) -> int:
        return len(self.vertices)


def verify_dominating(g: Graph, d) -> bool:
    chosen = set(d)
    return all(v in chosen or any(w in chosen for w in g.adj[v]) for v in range(g.n))


def leaf_table(graph_edge: tuple[int, int], omega: Sequence[int]) -> ColorTable:
    u, v = graph_edge
    omega = tuple(sorted(omega))
    if not set(omega) <= {u, v}:
        raise StructuralError(f"middle set {omega} not within edge {graph_edge}")
    if len(omega) == 2:
        cost, choice = [INF] * 9, [None] * 9
        a, b = omega
        for ca, cb in itertools.product((WHITE, GREY, BLACK), repeat=2):
            # a WHITE end needs the other end BLACK, the only neighbour it has here
            if (ca == WHITE and cb != BLACK) or (cb == WHITE and ca != BLACK):
                continue
            members = tuple(x for x, c in ((a, ca), (b, cb)) if c == BLACK)
            cost[encode((ca, cb))] = len(members)
            choice[encode((ca, cb))] = members
        return ColorTable(omega, cost, choice)
    if len(omega) == 1:
        (a,) = omega
        hidden = v if a == u else u
        # the hidden end touches nothing else: it must be chosen unless a is
        return ColorTable(
            omega,
            cost=[1, 1, 1],
            choice=[(hidden,), (hidden,), (a,)],
        )
    return ColorTable((), cost=[1], choice=[(min(u, v),)])


def _check_omega(omega, omega1, omega2):
    s, s1, s2 = set(omega), set(omega1), set(omega2)
    for x in s | s1 | s2:
        if (x in s) + (x in s1) + (x in s2) == 1:
            raise StructuralError(f"vertex {x} lies in exactly one middle set")


def merge_tables(
    omega: Sequence[int], t1: ColorTable, t2: ColorTable, traceback: bool = True
) -> ColorTable:
    """Combine the tables of the two child edges into the parent's table."""
    omega = tuple(sorted(omega))
    _check_omega(omega, t1.omega, t2.omega)
    s, s1, s2 = set(omega), set(t1.omega), set(t2.omega)
    x3 = s & s1 & s2
    x4 = (s1 | s2) - s

    w1, w2 = len(t1.omega), len(t2.omega)
    place1 = {x: 3 ** (w1 - 1 - i) for i, x in enumerate(t1.omega)}
    place2 = {x: 3 ** (w2 - 1 - i) for i, x in enumerate(t2.omega)}

    # X4 vertices: both BLACK, or dominated on exactly one side
    x4_opts = [
        [
            (BLACK * place1[x], BLACK * place2[x], 1),
            (WHITE * place1[x], GREY * place2[x], 0),
            (GREY * place1[x], WHITE * place2[x], 0),
        ]
        for x in sorted(x4)
    ]

    size = 3 ** len(omega)
    cost = [INF] * size
    choice = [None] * size if traceback else None
    c1v, c2v = t1.cost, t2.cost
    for ci in range(size):
        colors = decode(ci, len(omega))
        base1 = base2 = blacks = 0
        var = list(x4_opts)
        for x, c in zip(omega, colors):
            if x in x3:
                if c == WHITE:
                    var.append(
                        [
                            (WHITE * place1[x], GREY * place2[x], 0),
                            (GREY * place1[x], WHITE * place2[x], 0),
                        ]
                    )
                    continue
                base1 += c * place1[x]
                base2 += c * place2[x]
                blacks += c == BLACK
            elif x in s1:
                base1 += c * place1[x]
            else:
                base2 += c * place2[x]
        best = None
        for combo in itertools.product(*var):
            i1, i2, extra = base1, base2, blacks
            for d1, d2, b in combo:
                i1 += d1
                i2 += d2
                extra += b
            a1, a2 = c1v[i1], c2v[i2]
            if a1 >= INF or a2 >= INF:
                continue
            key = (a1 + a2 - extra, i1, i2)
            if best is None or key < best:
                best = key
        if best is not None:
            cost[ci] = best[0]
            if traceback:
                choice[ci] = (best[1], best[2])
    return ColorTable(omega, cost, choice)


def root_combine(t1: ColorTable, t2: ColorTable) -> tuple[int, tuple[int, int]]:
    """Optimum over the two tables below the root, with its coloring pair."""
    if t1.omega != t2.omega:
        raise StructuralError("children of the root disagree on their middle set")
    table = merge_tables((), t1, t2, traceback=True)
    if table.cost[0] >= INF:
        raise StructuralError("no feasible coloring at the root")
    return table.cost[0], table.choice[0]


def compute_tables(
    g: Graph, rooted: RootedDecomposition, traceback: bool = True, width_cap: int | None = None
) -> dict[int, ColorTable]:
    """Tables for every T' edge below z, bottom-up."""
    cap = 3 ** (width_cap if width_cap is not None else rooted.width())
    tables: dict[int, ColorTable] = {}
    for x in rooted.postorder():
        if x == rooted.z:
            break
        if rooted.is_leaf(x):
            t = leaf_table(rooted.leaf_edge(x), rooted.omega[x])
            if not traceback:
                t.choice = None
        else:
            c1, c2 = rooted.children[x]
            if traceback:
                t1, t2 = tables[c1], tables[c2]
            else:
                t1, t2 = tables.pop(c1), tables.pop(c2)
            t = merge_tables(rooted.omega[x], t1, t2, traceback)
        if len(t) > cap:
            raise AssertionError(f"table of size {len(t)} exceeds 3^width = {cap}")
        tables[x] = t
    return tables


def traceback(
    rooted: RootedDecomposition, tables: dict[int, ColorTable], root_argmin: tuple[int, int]
) -> DominatingSet:
    members: set[int] = set()
    stack = list(zip(rooted.children[rooted.z], root_argmin))
    while stack:
        x, ci = stack.pop()
        t = tables[x]
        if t.choice is None:
            raise StructuralError("tables built without traceback")
        payload = t.choice[ci]
        if rooted.is_leaf(x):
            members.update(payload)
        else:
            stack.extend(zip(rooted.children[x], payload))
    return DominatingSet(tuple(sorted(members)), valid=True)


def dp_dominating_set(
    g: Graph, rooted: RootedDecomposition
) -> tuple[DominatingSet, int, int]:
    """Run the DP on a connected graph with >= 2 edges.

    Returns the set, the root optimum and the largest table size seen.
    """
    tables = compute_tables(g, rooted)
    left, right = rooted.children[rooted.z]
    value, argmin = root_combine(tables[left], tables[right])
    ds = traceback(rooted, tables, argmin)
    if ds.cardinality != value:
        raise InconsistentSolution(f"traceback size {ds.cardinality} != optimum {value}")
    biggest = max(len(t) for t in tables.values())
    return DominatingSet(ds.vertices, verify_dominating(g, ds.vertices)), value, biggest


def _solve_component(sub: Graph, edge_order, priority, split_edge, timings, stats):
    if sub.m == 0:
        return [0], True, 0, []
    if sub.m == 1:
        return [min(sub.edges[0])], True, 0, []

    t0 = time.perf_counter()
    planar = is_planar(sub)
    timings["planarity"] = timings.get("planarity", 0.0) + time.perf_counter() - t0
    removed: list[tuple[int, int]] = []
    h = sub
    if not planar:
        t0 = time.perf_counter()
        res = maximal_planar_subgraph(sub, edge_order, priority)
        timings["planarize"] = timings.get("planarize", 0.0) + time.perf_counter() - t0
        h = res.subgraph
        removed = list(res.removed_edges)

    t0 = time.perf_counter()
    bd = decompose(h)
    rooted = root_decomposition(bd, split_edge)
    timings["decompose"] = timings.get("decompose", 0.0) + time.perf_counter() - t0

    t0 = time.perf_counter()
    ds, _, biggest = dp_dominating_set(h, rooted)
    timings["dp"] = timings.get("dp", 0.0) + time.perf_counter() - t0
    stats["max_table"] = max(stats.get("max_table", 0), biggest)
    return list(ds.vertices), planar, bd.width, removed


def solve_planar_mds(
    g: Graph,
    edge_order: str = "input",
    priority=None,
    split_edge=None,
    case: str = "",
) -> SolveReport:
    """Branch-decomposition pipeline: planarity gate, planarization if needed,
    optimal decomposition, DP and traceback, verified on ``g`` itself."""
    start = time.perf_counter()
    timings: dict[str, float] = {}
    stats: dict[str, int] = {}
    members: list[int] = []
    removed: list[tuple[int, int]] = []
    exact = True
    width = 0
    for sub, back in component_graphs(g):
        local, planar, bw, rem = _solve_component(
            sub, edge_order, priority, split_edge, timings, stats
        )
        members.extend(back[v] for v in local)
        removed.extend((back[a], back[b]) for a, b in rem)
        exact = exact and planar
        width = max(width, bw)
    if not verify_dominating(g, members):
        raise InconsistentSolution("pipeline output does not dominate the input graph")
    timings["total"] = time.perf_counter() - start
    lab = g.labels
    return SolveReport(
        solver="bd",
        case=case,
        n_vertices=g.n,
        n_edges=g.m,
        members=tuple(sorted(lab[v] for v in members)),
        exact=exact,
        planar=exact,
        branch_width=width,
        removed_edges=tuple(sorted((lab[a], lab[b]) for a, b in removed)),
        timings=timings,
        stats=stats,
    )
