from __future__ import annotations

import time

from .baselines import brute_force_ds, exact_bnb, greedy_ds
from .dp import solve_planar_mds
from .graph import Graph
from .report import SolveReport

SOLVERS = ("bd", "greedy", "bnb", "brute")


def solve(
    g: Graph,
    solver: str = "bd",
    *,
    edge_order: str = "input",
    priority=None,
    time_budget: float | None = 60.0,
    case: str = "",
) -> SolveReport:
    """Run one of the dominating-set solvers and wrap the result in a report."""
    if solver == "bd":
        return solve_planar_mds(g, edge_order=edge_order, priority=priority, case=case)
    start = time.perf_counter()
    stats: dict[str, int] = {}
    if solver == "greedy":
        ds, exact = greedy_ds(g), False
    elif solver == "bnb":
        res = exact_bnb(g, time_budget)
        ds, exact = res.dominating_set, res.optimal
        stats = {"nodes": res.nodes, "root_lower_bound": res.root_lower_bound}
    elif solver == "brute":
        ds, exact = brute_force_ds(g), True
    else:
        raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    if not ds.valid:
        raise RuntimeError(f"{solver} returned a set that does not dominate the graph")
    return SolveReport(
        solver=solver,
        case=case,
        n_vertices=g.n,
        n_edges=g.m,
        members=tuple(sorted(g.labels[v] for v in ds.vertices)),
        exact=exact,
        timings={"total": time.perf_counter() - start},
        stats=stats,
    )
