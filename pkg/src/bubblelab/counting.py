"""Counting arithmetic behind the line-grid lower bounds.

Every bound here is a finite ingredient: the lower-order slack that the
asymptotic statements carry is returned as an explicit string field and never
folded into a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .bubbles import BubbleSet, bound_constants
from .constructions import linear_count, prelim_count
from .geometry import DEFAULT_TOL, PointSet, Tolerance

SCHEMES = ("prelim_linear", "refined_grid")
DEFAULT_DELTA = {"prelim_linear": Fraction(1, 60), "refined_grid": Fraction(1, 29)}


@dataclass(frozen=True)
class LocalCase:
    """One local configuration: ``disks`` disks supported by ``points`` points, with a surplus of ``extra``."""

    label: str
    points: int
    disks: int
    extra: int = 1

    @property
    def rhs(self) -> Fraction:
        return Fraction(self.points + self.extra, 2)

    @property
    def holds(self) -> bool:
        return self.disks >= self.rhs

    @property
    def tight(self) -> bool:
        return self.disks == self.rhs

    def as_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "m": self.points,
            "disks": self.disks,
            "rhs": str(self.rhs),
            "holds": self.holds,
            "tight": self.tight,
        }


# disk touching an interior point and i - 1 outer points, or three outer points
THREE_LINE_CASES = (
    LocalCase("interior point only", 1, 1),
    LocalCase("interior point and one outer point", 4, 3),
    LocalCase("interior point and two points on one outer line", 5, 3),
    LocalCase("interior point and one point on each outer line", 7, 5),
    LocalCase("three outer points, no interior point", 8, 5),
)


@dataclass(frozen=True)
class PathRow:
    """A path of ``i`` large disks plus the four singletons forced per edge."""

    i: int

    @property
    def disks(self) -> int:
        return 5 * self.i - 4

    @property
    def max_points(self) -> int:
        return 7 * self.i - 4

    @property
    def halved(self) -> Fraction:
        return Fraction(self.max_points + self.i, 2)

    @property
    def holds(self) -> bool:
        return self.disks >= self.halved

    @property
    def equality(self) -> bool:
        return self.disks == self.halved

    def as_dict(self) -> dict[str, Any]:
        return {
            "i": self.i,
            "disks": self.disks,
            "max_points": self.max_points,
            "rhs": str(self.halved),
            "holds": self.holds,
            "equality": self.equality,
        }


def path_rows(i_max: int = 100) -> list[PathRow]:
    return [PathRow(i) for i in range(1, i_max + 1)]


@dataclass
class CountingReport:
    scheme: str
    j: int
    k: int
    delta: Fraction
    n: int
    bound: Fraction
    bound_floor: int
    denominator: Fraction
    unresolved_slack: str
    local_cases: list[LocalCase] = field(default_factory=list)
    paths: list[PathRow] = field(default_factory=list)

    @property
    def local_ok(self) -> bool:
        return all(c.holds for c in self.local_cases)

    def as_dict(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme,
            "j": self.j,
            "k": self.k,
            "delta": str(self.delta),
            "n": self.n,
            "bound_unnormalized": str(self.bound),
            "bound_floor": self.bound_floor,
            "unresolved_slack": self.unresolved_slack,
            "denominator": str(self.denominator),
            "asymptotic_form": f"n/2 + n/{self.denominator} {self.unresolved_slack}",
            "local_cases": [c.as_dict() for c in self.local_cases],
            "paths": [p.as_dict() for p in self.paths],
            "paths_failing": [p.i for p in self.paths if not p.holds],
            "paths_equality": [p.i for p in self.paths if p.equality],
        }


def counting_bounds(
    j: int, k: int = 1, scheme: str = "prelim_linear", delta: Fraction | None = None, i_max: int = 100
) -> CountingReport:
    """Point count and the unnormalized lower bound for a line grid.

    ``prelim_linear`` is the three-line grid (``k`` must be 1) with bound
    ``(n + j) / 2 - O(1)``; ``refined_grid`` has ``k`` sparse lines and bound
    ``(n + (j - 1) k) / 2 - O(k)``.
    """
    if j < 1 or k < 1:
        raise ValueError("j and k must be positive")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    d = DEFAULT_DELTA[scheme] if delta is None else Fraction(delta)
    if scheme == "prelim_linear":
        if k != 1:
            raise ValueError("the three-line grid has k = 1")
        n = prelim_count(j, d)
        bound = Fraction(n + j, 2)
        slack = "-O(1)"
        cases, paths = list(THREE_LINE_CASES), []
    else:
        n = linear_count(j, k, d)
        bound = Fraction(n + (j - 1) * k, 2)
        slack = "-O(k)"
        cases, paths = [], path_rows(i_max)
    return CountingReport(
        scheme, j, k, d, n, bound, math.floor(bound), bound_constants(scheme, d), slack, cases, paths
    )


# -- large-disk graph on a concrete bubble set --------------------------------

@dataclass
class LargeDiskGraph:
    vertices: list[int]
    edges: list[tuple[int, int]]

    def components(self) -> list[list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out


def large_disk_graph(
    ps: PointSet, bubble: BubbleSet, min_radius: float = 1.0, max_gap: int = 5, tol: Tolerance = DEFAULT_TOL
) -> LargeDiskGraph:
    """Graph on the large disks of a bubble set over a line grid.

    A disk is large when its radius is at least ``min_radius`` and it touches
    a point on a dense (odd-indexed) line. Two large disks are adjacent when
    they touch points on a common dense line and at most ``max_gap`` points of
    that line, touching neither disk, lie between their centers' x values.
    """
    if ps.labels is None:
        raise ValueError("grid labels are required")
    line = np.array([lab[0] for lab in ps.labels])
    c, r = bubble.arrays()
    gaps = np.abs(np.hypot(ps.coords[None, :, 0] - c[:, None, 0], ps.coords[None, :, 1] - c[:, None, 1]) - r[:, None])
    touch = gaps <= tol.eps_incidence
    dense = line % 2 == 1
    verts = [d for d in range(len(r)) if r[d] >= min_radius - 1e-9 and (touch[d] & dense).any()]
    edges = []
    for a_pos, a in enumerate(verts):
        for b in verts[a_pos + 1 :]:
            common = set(line[touch[a] & dense]) & set(line[touch[b] & dense])
            for lid in sorted(common):
                on_line = line == lid
                lo, hi = sorted((c[a, 0], c[b, 0]))
                xs = ps.coords[:, 0]
                between = on_line & (xs >= lo) & (xs <= hi) & ~touch[a] & ~touch[b]
                if int(between.sum()) <= max_gap:
                    edges.append((a, b))
                    break
    return LargeDiskGraph(verts, edges)
