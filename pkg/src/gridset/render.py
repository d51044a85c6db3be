"""SVG drawings of a case with its dominating set highlighted.

Dominators are red squares, other buses circles, and edges dropped by the
planarization are dashed. Positions come from the case when it carries
coordinates, otherwise from a Tutte barycentric layout (planar graphs) or
a seeded spring layout.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

import networkx as nx
import numpy as np

from .graph import Graph, is_planar, planar_embedding, induced_subgraph
from .ingest import CaseFile
from .report import SolveReport

CANVAS = 800
MARGIN = 40


class RenderError(ValueError):
    pass


def _two_core(g: Graph) -> set[int]:
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    return alive


def tutte_layout(g: Graph) -> dict[int, tuple[float, float]]:
    """Barycentric layout of a connected planar graph.

    The longest face of the 2-core is pinned to a circle and every other
    core vertex sits at the mean of its neighbours. Trees hanging off the
    core are fanned out from their attachment vertex.
    """
    core = sorted(_two_core(g))
    if not core:
        raise RenderError("Tutte layout needs a cycle")
    sub, back = induced_subgraph(g, core)
    emb = planar_embedding(sub)
    outer_walk = max(emb.faces, key=lambda f: len(set(f)))
    outer = list(dict.fromkeys(outer_walk))
    pos = np.zeros((sub.n, 2))
    for i, v in enumerate(outer):
        angle = 2 * math.pi * i / len(outer)
        pos[v] = (math.cos(angle), math.sin(angle))
    fixed = set(outer)
    inner = [v for v in range(sub.n) if v not in fixed]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        A = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = index[v]
            A[i, i] = sub.degree(v)
            for w in sub.adj[v]:
                if w in index:
                    A[i, index[w]] -= 1
                else:
                    b[i] += pos[w]
        pos[inner] = np.linalg.solve(A, b)

    out = {back[v]: (float(pos[v][0]), float(pos[v][1])) for v in range(sub.n)}
    # fan pendant trees outward
    frontier = sorted(out)
    step = 0.12
    while frontier:
        nxt = []
        for p in frontier:
            kids = [w for w in g.adj[p] if w not in out]
            if not kids:
                continue
            px, py = out[p]
            base = math.atan2(py, px) if (px or py) else 0.0
            for j, w in enumerate(kids):
                angle = base + (j - (len(kids) - 1) / 2) * 0.5
                out[w] = (px + step * math.cos(angle), py + step * math.sin(angle))
                nxt.append(w)
        frontier = nxt
    return out


def spring_layout(g: Graph, seed: int = 0) -> dict[int, tuple[float, float]]:
    pos = nx.spring_layout(g.to_networkx(), seed=seed)
    return {v: (float(x), float(y)) for v, (x, y) in pos.items()}


def layout(g: Graph, seed: int = 0) -> dict[int, tuple[float, float]]:
    if g.n == 1:
        return {0: (0.0, 0.0)}
    if is_planar(g) and nx.is_connected(g.to_networkx()) and _two_core(g):
        return tutte_layout(g)
    return spring_layout(g, seed)


def _to_canvas(pos: dict[int, tuple[float, float]]) -> dict[int, tuple[float, float]]:
    if not pos:
        return {}
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (CANVAS - 2 * MARGIN) / span
    return {
        v: (MARGIN + (x - min(xs)) * scale, MARGIN + (y - min(ys)) * scale)
        for v, (x, y) in pos.items()
    }


def draw_svg(
    labels, edges, members, removed=(), positions=None, title: str = ""
) -> str:
    """Assemble the SVG text. ``positions`` maps labels to canvas coordinates."""
    positions = positions or {}
    members = set(members)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f"<title>{escape(title)}</title>",
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    for a, b in edges:
        (x1, y1), (x2, y2) = positions[a], positions[b]
        parts.append(
            f'<line class="edge" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            'stroke="#555" stroke-width="1.2"/>'
        )
    for a, b in removed:
        (x1, y1), (x2, y2) = positions[a], positions[b]
        parts.append(
            f'<line class="removed" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            'stroke="#1f5fbf" stroke-width="1.2" stroke-dasharray="6,4"/>'
        )
    for lab in labels:
        x, y = positions[lab]
        if lab in members:
            parts.append(
                f'<rect class="pmu" x="{x - 6:.2f}" y="{y - 6:.2f}" width="12" height="12" '
                'fill="red" stroke="black" stroke-width="0.8"/>'
            )
        else:
            parts.append(
                f'<circle class="bus" cx="{x:.2f}" cy="{y:.2f}" r="4" '
                'fill="white" stroke="black" stroke-width="0.8"/>'
            )
        parts.append(
            f'<text x="{x + 7:.2f}" y="{y - 7:.2f}" font-size="9" '
            f'font-family="sans-serif">{lab}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_svg(case: CaseFile, report: SolveReport, seed: int = 0) -> str:
    buses = set(case.buses)
    stray = [m for m in report.members if m not in buses]
    if stray:
        raise RenderError(f"report members not in case: {stray[:5]}")
    if not buses:
        return draw_svg([], [], [], title=case.name)
    g = case.graph()
    removed = {tuple(sorted(e)) for e in report.removed_edges}
    kept = [e for e in g.label_edges() if tuple(sorted(e)) not in removed]
    if all(b in case.coords for b in buses):
        raw = dict(case.coords)
    else:
        raw = {g.labels[v]: p for v, p in layout(g, seed).items()}
    canvas = _to_canvas(raw)
    return draw_svg(
        list(g.labels), kept, report.members, sorted(removed), canvas, title=case.name
    )
