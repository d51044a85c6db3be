"""Command line front end: ``gridset {solve,bw,compare,render}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .baselines import exact_bnb, greedy_ds
from .branchdecomp import decompose, write_decomposition
from .graph import GraphError, is_planar
from .ingest import ParseError, load_case, read_report, write_report
from .planarize import planarize_components
from .render import render_svg
from .solve import SOLVERS, solve

EXIT_PARSE = 1
EXIT_SOLVER = 2


class _ParseFailure(Exception):
    pass


def _edge_order(value: str):
    """Split ``input|degree|explicit:<file>`` into a policy and priority list."""
    if value.startswith("explicit:"):
        path = Path(value.split(":", 1)[1])
        pairs = []
        for raw in path.read_text(encoding="utf-8").splitlines():
            line = raw.split("#", 1)[0].split()
            if line:
                pairs.append((int(line[0]), int(line[1])))
        return "explicit", pairs
    if value not in ("input", "degree"):
        raise argparse.ArgumentTypeError(f"bad edge order {value!r}")
    return value, None


def _load(ref):
    try:
        case = load_case(ref)
        return case, case.graph()
    except (ParseError, FileNotFoundError, GraphError) as exc:
        raise _ParseFailure(str(exc)) from exc


def cmd_solve(args) -> int:
    case, g = _load(args.case)
    policy, priority = args.edge_order
    report = solve(
        g, args.solver, edge_order=policy, priority=priority,
        time_budget=args.time_budget, case=case.name,
    )
    print(report.summary())
    print("members:", " ".join(str(m) for m in report.members))
    if report.removed_edges:
        print("removed:", " ".join(f"{a}-{b}" for a, b in report.removed_edges))
    out = Path(args.out or f"{case.name}.{args.solver}.report")
    out.write_text(write_report(report), encoding="utf-8")
    return 0


def cmd_bw(args) -> int:
    case, g = _load(args.case)
    policy, priority = args.edge_order
    planar = is_planar(g)
    if planar:
        h, removed = g, []
    else:
        h, removed = planarize_components(g, policy, priority)
    bd = decompose(h)
    if planar:
        print(f"planar: yes, bw = {bd.width}")
    else:
        print(f"planar: no, bw = {bd.width} (planar subgraph, {len(removed)} edges removed)")
    out = Path(args.out or f"{case.name}.bd")
    out.write_text(write_decomposition(h, bd), encoding="utf-8")
    return 0


def compare_row(g, edge_order="input", priority=None, time_budget=60.0) -> str:
    planar = is_planar(g)
    bd_report = solve(g, "bd", edge_order=edge_order, priority=priority)
    bnb = exact_bnb(g, time_budget)
    star = "" if bnb.optimal else "?"
    cells = [
        g.n, g.m, "yes" if planar else "no", bd_report.branch_width,
        f"{bnb.dominating_set.cardinality}{star}", bd_report.cardinality,
        greedy_ds(g).cardinality,
    ]
    return " ".join(str(c) for c in cells)


def cmd_compare(args) -> int:
    case, g = _load(args.case)
    policy, priority = args.edge_order
    row = compare_row(g, policy, priority, args.time_budget)
    if args.header:
        print("|V| |E| planar BW_p |D*| |D*_BD| |D*_gr|")
    print(row)
    return 0


def cmd_render(args) -> int:
    case, _ = _load(args.case)
    try:
        report = read_report(Path(args.report).read_text(encoding="utf-8"))
    except (ParseError, OSError) as exc:
        raise _ParseFailure(str(exc)) from exc
    svg = render_svg(case, report, seed=args.seed)
    out = Path(args.out or f"{case.name}.svg")
    out.write_text(svg, encoding="utf-8")
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridset",
        description="Minimum dominating sets (PMU placement) on power-grid graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("case", help="case file path or benchmark name (e.g. case14)")
        p.add_argument("--edge-order", type=_edge_order, default=("input", None),
                       metavar="{input|degree|explicit:<file>}")
        p.add_argument("--out", help="output file")

    p = sub.add_parser("solve", help="solve one case and write a report")
    common(p)
    p.add_argument("--solver", choices=SOLVERS, default="bd")
    p.add_argument("--time-budget", type=float, default=60.0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bw", help="branch-width and decomposition file")
    common(p)
    p.set_defaults(func=cmd_bw)

    p = sub.add_parser("compare", help="print one comparison row")
    common(p)
    p.add_argument("--time-budget", type=float, default=60.0)
    p.add_argument("--header", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("render", help="draw a case and its report as SVG")
    p.add_argument("case")
    p.add_argument("report")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0, help="layout seed")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - any solver failure maps to one exit code
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
