"""Reading benchmark cases and reading/writing solve reports.

Supported inputs are the bus and branch matrices of MATPOWER ``.m`` case
files and plain ``u v`` edge lists. Every branch becomes an edge whatever
its status column says; parallel branches collapse into one edge.
"""
from __future__ import annotations

import logging
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .graph import Graph, build_graph
from .report import SolveReport

log = logging.getLogger(__name__)

REPORT_MAGIC = "gridset-report"
REPORT_VERSION = 1

# Short benchmark names mapped onto MATPOWER file stems.
CASE_ALIASES = {"case24": "case24_ieee_rts", "ieee24": "case24_ieee_rts"}
BENCHMARKS = (
    "case9", "case14", "case24_ieee_rts", "case30",
    "case39", "case57", "case118", "case300",
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class Branch:
    from_bus: int
    to_bus: int
    status: int = 1


@dataclass
class CaseFile:
    name: str
    buses: list[int]
    branches: list[Branch]
    fmt: str
    coords: dict[int, tuple[float, float]] = field(default_factory=dict)

    def graph(self) -> Graph:
        return build_graph(((b.from_bus, b.to_bus) for b in self.branches), self.buses)


_BLOCK_RE = re.compile(r"mpc\.(\w+)\s*=\s*\[")


def _matrix_rows(text: str, name: str):
    """Yield (line number, numeric row) for matrix block ``mpc.<name>``."""
    for match in _BLOCK_RE.finditer(text):
        if match.group(1) != name:
            continue
        lineno = text.count("\n", 0, match.end()) + 1
        body_start = match.end()
        end = text.find("]", body_start)
        if end < 0:
            raise ParseError(f"unterminated mpc.{name} block", lineno)
        body = text[body_start:end]
        for offset, line in enumerate(body.split("\n")):
            line = line.split("%", 1)[0]
            for chunk in line.split(";"):
                tokens = chunk.replace(",", " ").split()
                if not tokens:
                    continue
                try:
                    row = [float(t) for t in tokens]
                except ValueError:
                    raise ParseError(f"non-numeric entry in mpc.{name}: {chunk.strip()!r}",
                                     lineno + offset) from None
                yield lineno + offset, row
        return
    raise ParseError(f"missing mpc.{name} block")


def _as_int(value: float, what: str, lineno: int) -> int:
    if value != int(value):
        raise ParseError(f"{what} must be an integer, got {value}", lineno)
    return int(value)


def parse_matpower(text: str, name: str = "") -> CaseFile:
    if not name:
        m = re.search(r"function\s+\w+\s*=\s*(\w+)", text)
        name = m.group(1) if m else "case"
    buses = []
    seen = set()
    for lineno, row in _matrix_rows(text, "bus"):
        bus = _as_int(row[0], "bus id", lineno)
        if bus in seen:
            raise ParseError(f"duplicate bus id {bus}", lineno)
        seen.add(bus)
        buses.append(bus)
    branches = []
    for lineno, row in _matrix_rows(text, "branch"):
        if len(row) < 2:
            raise ParseError("branch row needs from and to bus", lineno)
        a = _as_int(row[0], "from bus", lineno)
        b = _as_int(row[1], "to bus", lineno)
        for bus in (a, b):
            if bus not in seen:
                raise ParseError(f"branch references undeclared bus {bus}", lineno)
        status = _as_int(row[10], "status", lineno) if len(row) > 10 else 1
        branches.append(Branch(a, b, status))
    return CaseFile(name=name, buses=buses, branches=branches, fmt="matpower")


def parse_edge_list(text: str, name: str = "edges") -> CaseFile:
    buses: dict[int, None] = {}
    branches = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex ids, got {raw.strip()!r}", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {raw.strip()!r}", lineno) from None
        buses.setdefault(a)
        buses.setdefault(b)
        if a == b:
            log.warning("line %d: self-loop on %d dropped", lineno, a)
            continue
        branches.append(Branch(a, b))
    return CaseFile(name=name, buses=list(buses), branches=branches, fmt="edgelist")


def write_edge_list(g: Graph) -> str:
    return "".join(f"{a} {b}\n" for a, b in g.label_edges())


def data_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get("GRIDSET_DATA_DIR")
    if env:
        dirs.extend(Path(p) for p in env.split(os.pathsep) if p)
    dirs.append(Path(str(resources.files("gridset") / "data")))
    return dirs


def resolve_case(ref: str) -> Path:
    """A readable file path, or a benchmark name looked up in the data dirs."""
    path = Path(ref)
    if path.is_file():
        return path
    stem = CASE_ALIASES.get(ref, ref)
    for d in data_dirs():
        for candidate in (d / stem, d / f"{stem}.m", d / f"{stem}.txt"):
            if candidate.is_file():
                return candidate
    raise FileNotFoundError(f"no case file or benchmark named {ref!r}")


def load_case(ref: str) -> CaseFile:
    path = resolve_case(ref)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".m" or "mpc.bus" in text:
        return parse_matpower(text, name=path.stem)
    return parse_edge_list(text, name=path.stem)


# ---------------------------------------------------------------------------
# reports


def _flag(value: bool | None) -> str:
    return "none" if value is None else ("true" if value else "false")


def _unflag(text: str) -> bool | None:
    return {"none": None, "true": True, "false": False}[text]


def write_report(report: SolveReport) -> str:
    lines = [
        f"{REPORT_MAGIC} {REPORT_VERSION}",
        f"solver = {report.solver}",
        f"case = {report.case}",
        f"vertices = {report.n_vertices}",
        f"edges = {report.n_edges}",
        f"planar = {_flag(report.planar)}",
        f"exact = {_flag(report.exact)}",
        f"branch_width = {'none' if report.branch_width is None else report.branch_width}",
        f"cardinality = {report.cardinality}",
        "removed = " + " ".join(f"{a}:{b}" for a, b in report.removed_edges),
    ]
    lines += [f"time.{k} = {v!r}" for k, v in sorted(report.timings.items())]
    lines += [f"stat.{k} = {v}" for k, v in sorted(report.stats.items())]
    lines.append("members")
    lines += [str(v) for v in report.members]
    return "\n".join(lines) + "\n"


def read_report(text: str) -> SolveReport:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty report")
    head = lines[0].split()
    if len(head) != 2 or head[0] != REPORT_MAGIC:
        raise ParseError("not a gridset report", 1)
    if head[1] != str(REPORT_VERSION):
        raise ParseError(f"report version {head[1]} unsupported (expected {REPORT_VERSION})", 1)
    fields: dict[str, str] = {}
    timings: dict[str, float] = {}
    stats: dict[str, int] = {}
    members: list[int] = []
    in_members = False
    try:
        for lineno, line in enumerate(lines[1:], 2):
            if in_members:
                if line.strip():
                    members.append(int(line))
                continue
            if line == "members":
                in_members = True
                continue
            key, sep, value = line.partition(" = ")
            if not sep:
                key, sep, value = line.partition(" =")
            if not sep:
                raise ParseError(f"expected 'key = value', got {line!r}", lineno)
            if key.startswith("time."):
                timings[key[5:]] = float(value)
            elif key.startswith("stat."):
                stats[key[5:]] = int(value)
            else:
                fields[key] = value
        removed = tuple(
            tuple(int(x) for x in tok.split(":")) for tok in fields["removed"].split()
        )
        report = SolveReport(
            solver=fields["solver"],
            case=fields["case"],
            n_vertices=int(fields["vertices"]),
            n_edges=int(fields["edges"]),
            members=tuple(members),
            exact=bool(_unflag(fields["exact"])),
            planar=_unflag(fields["planar"]),
            branch_width=None if fields["branch_width"] == "none" else int(fields["branch_width"]),
            removed_edges=removed,
            timings=timings,
            stats=stats,
        )
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed report: {exc}") from None
    if report.cardinality != int(fields["cardinality"]):
        raise ParseError("cardinality does not match the member list")
    return report
