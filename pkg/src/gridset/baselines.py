"""Reference dominating-set solvers: greedy, exact branch-and-bound, brute force.

The branch-and-bound treats the 0/1 program "choose x minimising sum(x)
subject to (A + I) x >= 1" as a set cover over closed neighbourhoods. All
sets are Python int bitmasks over vertex indices.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .dp import DominatingSet, verify_dominating
from .graph import Graph

BRUTE_FORCE_LIMIT = 25


def closed_neighbourhoods(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 1 << v
        for w in g.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_ds(g: Graph) -> DominatingSet:
    """Repeatedly take the vertex dominating the most undominated vertices.

    Ties go to the smallest vertex index.
    """
    N = closed_neighbourhoods(g)
    undominated = (1 << g.n) - 1
    chosen = []
    while undominated:
        best, gain = -1, -1
        for v in range(g.n):
            c = (N[v] & undominated).bit_count()
            if c > gain:
                best, gain = v, c
        chosen.append(best)
        undominated &= ~N[best]
    chosen.sort()
    return DominatingSet(tuple(chosen), verify_dominating(g, chosen))


def brute_force_ds(g: Graph) -> DominatingSet:
    """Smallest dominating set by exhaustive search in increasing size."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refuses graphs with more than {BRUTE_FORCE_LIMIT} vertices")
    N = closed_neighbourhoods(g)
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            acc = 0
            for v in combo:
                acc |= N[v]
            if acc == full:
                return DominatingSet(combo, True)
    raise AssertionError("unreachable: V dominates itself")


# ---------------------------------------------------------------------------
# branch and bound


@dataclass(frozen=True)
class BnBNode:
    """Search state: vertices still to dominate, vertices still allowed,
    vertices already chosen, and an admissible lower bound on the rest."""

    undominated: int
    candidates: int
    chosen: tuple[int, ...]
    lower_bound: int = 0


@dataclass(frozen=True)
class BnBResult:
    dominating_set: DominatingSet
    optimal: bool
    nodes: int
    root_lower_bound: int


class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, N: list[int], deadline: float | None):
        self.N = N
        self.deadline = deadline
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                raise _Timeout

    def reduce(self, node: BnBNode) -> BnBNode | None:
        """Apply forcing and dominance rules to a fixpoint; None if infeasible."""
        N = self.N
        U, C = node.undominated, node.candidates
        chosen = list(node.chosen)
        while True:
            changed = False
            # an element with one possible dominator forces it
            for u in _bits(U):
                if not U >> u & 1:
                    continue
                cand = N[u] & C
                if cand == 0:
                    return None
                if cand & (cand - 1) == 0:
                    v = cand.bit_length() - 1
                    chosen.append(v)
                    U &= ~N[v]
                    C &= ~(1 << v)
                    changed = True
            # drop useless or dominated candidates
            covers = {v: N[v] & U for v in _bits(C)}
            for v, cv in covers.items():
                if cv == 0:
                    C &= ~(1 << v)
                    changed = True
                    continue
                for w, cw in covers.items():
                    if w != v and C >> w & 1 and cv & ~cw == 0 and (cv != cw or w < v):
                        C &= ~(1 << v)
                        changed = True
                        break
            # an element whose dominators all dominate another element makes
            # the second one redundant
            cands = {u: N[u] & C for u in _bits(U)}
            for w, cw in cands.items():
                for u, cu in cands.items():
                    if u != w and U >> u & 1 and cu & ~cw == 0 and (cu != cw or u < w):
                        U &= ~(1 << w)
                        changed = True
                        break
            if not changed:
                return BnBNode(U, C, tuple(chosen))

    def lower_bound(self, U: int, C: int) -> int:
        """Disjoint-dominator packing, and a cover-size bound."""
        N = self.N
        cands = sorted(((N[u] & C).bit_count(), u) for u in _bits(U))
        used = 0
        packed = 0
        for _, u in cands:
            cu = N[u] & C
            if cu & used == 0:
                used |= cu
                packed += 1
        biggest = max(((N[v] & U).bit_count() for v in _bits(C)), default=1)
        cover = -(-U.bit_count() // max(biggest, 1))
        return max(packed, cover)

    def components(self, U: int, C: int) -> list[tuple[int, int]]:
        N = self.N
        parts = []
        remaining = U
        while remaining:
            seed = remaining & -remaining
            comp_u, comp_c = seed, 0
            frontier = seed
            while frontier:
                new_c = 0
                for u in _bits(frontier):
                    new_c |= N[u] & C
                new_c &= ~comp_c
                comp_c |= new_c
                new_u = 0
                for v in _bits(new_c):
                    new_u |= N[v] & U
                frontier = new_u & ~comp_u
                comp_u |= new_u
            parts.append((comp_u, comp_c))
            remaining &= ~comp_u
        return parts

    def solve(self, node: BnBNode, limit: int) -> list[int] | None:
        """A cheapest completion using fewer than ``limit`` extra vertices, or None."""
        self.tick()
        start = len(node.chosen)
        node = self.reduce(node)
        if node is None:
            return None
        forced = list(node.chosen[start:])
        if len(forced) >= limit:
            return None
        U, C = node.undominated, node.candidates
        if U == 0:
            return forced
        budget = limit - len(forced)

        parts = self.components(U, C)
        if len(parts) > 1:
            bounds = [self.lower_bound(u, c) for u, c in parts]
            if sum(bounds) >= budget:
                return None
            picked: list[int] = []
            for i, (u, c) in enumerate(parts):
                rest = sum(bounds[i + 1:])
                sol = self.solve(BnBNode(u, c, ()), budget - len(picked) - rest)
                if sol is None:
                    return None
                picked.extend(sol)
            return forced + picked

        if self.lower_bound(U, C) >= budget:
            return None
        N = self.N
        u = min(_bits(U), key=lambda x: ((N[x] & C).bit_count(), x))
        options = sorted(_bits(N[u] & C), key=lambda v: (-(N[v] & U).bit_count(), v))
        best = None
        for v in options:
            sol = self.solve(BnBNode(U & ~N[v], C & ~(1 << v), ()), budget - 1)
            if sol is not None:
                best = [v] + sol
                budget = len(best)
            C &= ~(1 << v)  # every set containing v has been covered
        return None if best is None else forced + best


def exact_bnb(g: Graph, time_budget: float | None = 60.0) -> BnBResult:
    N = closed_neighbourhoods(g)
    incumbent = list(greedy_ds(g).vertices)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    search = _Search(N, deadline)
    full = (1 << g.n) - 1
    root = BnBNode(full, full, ())
    reduced = search.reduce(root)
    root_lb = len(reduced.chosen) + search.lower_bound(reduced.undominated, reduced.candidates)
    optimal = True
    try:
        sol = search.solve(root, len(incumbent))
        if sol is not None:
            incumbent = sol
    except _Timeout:
        optimal = False
    incumbent.sort()
    ds = DominatingSet(tuple(incumbent), verify_dominating(g, incumbent))
    return BnBResult(ds, optimal, search.nodes, root_lb)


def exact_bnb_ds(g: Graph, time_budget: float | None = 60.0) -> tuple[DominatingSet, bool]:
    """Minimum dominating set and whether optimality was proven in time."""
    res = exact_bnb(g, time_budget)
    return res.dominating_set, res.optimal
