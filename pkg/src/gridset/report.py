from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SolveReport:
    """Outcome of one solver run, in external bus labels."""

    solver: str
    case: str
    n_vertices: int
    n_edges: int
    members: tuple[int, ...]
    exact: bool
    planar: bool | None = None
    branch_width: int | None = None
    removed_edges: tuple[tuple[int, int], ...] = ()
    timings: dict[str, float] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def cardinality(self) -> int:
        return len(self.members)

    def summary(self) -> str:
        tag = "exact" if self.exact else "exact=false"
        return f"|D| = {self.cardinality}, {tag}"
