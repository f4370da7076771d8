"""Numeric certificates for the dense/sparse line constructions.

* :func:`lemma1_check` -- two disks through adjacent pairs of dense-line points,
  both touching the line ``(1 - sqrt(3)/2) delta`` above, are tangent.
* :func:`lemma2_depth` -- clearance under a large disk at a horizontal offset.
* :func:`lemma4_closed_form` / :func:`lemma4_numeric` -- the spacing at which
  a unit disk and two small disks through pairs of line points are pairwise
  tangent, solved two independent ways.
* :func:`g` and :func:`sandwich_table` -- the chord-depth inequalities used by
  the sandwich case analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoConvergence
from .geometry import (
    DEFAULT_TOL,
    Disk,
    DiskRelation,
    Point,
    Tolerance,
    circumcircle,
    circumradius_abc,
    disk_slack,
    disks_disjoint,
)

#: Quadratic in lambda = z**2 whose smaller root fixes the refined spacing.
QUADRATIC = (893025.0, -52920.0, 16.0)
REFINED_DELTA = 1 / 29
PRELIM_DELTA = 1 / 60
SANDWICH_FACTOR = 0.9
LEMMA2_CONSTANT = 0.1337
LEMMA2_QUADRATIC_CONSTANT = 8.02


# -- three mutually tangent circles ------------------------------------------

@dataclass(frozen=True)
class Lemma4Solution:
    x: float
    z: float
    lam: float
    r1: float
    r2: float
    y1: float
    y2: float
    residuals: tuple[float, float, float, float, float]
    method: str
    details: dict = field(default_factory=dict, compare=False)

    @property
    def unknowns(self) -> np.ndarray:
        return np.array([self.x, self.r1, self.r2, self.y1, self.y2])

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals)


def lemma4_system(v: np.ndarray) -> np.ndarray:
    """The five incidence/tangency equations in ``(x, r1, r2, y1, y2)``.

    Unit disk ``C`` at ``(0, 1)``; ``C_1`` centered ``(2x, -y1)`` through
    ``(3x/2, 0)``; ``C_2`` centered ``(4x, -y2)`` through ``(7x/2, 0)``.
    """
    x, r1, r2, y1, y2 = v
    z = x / 2
    return np.array(
        [
            z * z + y1 * y1 - r1 * r1,
            z * z + y2 * y2 - r2 * r2,
            16 * z * z + (1 + y1) ** 2 - (1 + r1) ** 2,
            64 * z * z + (1 + y2) ** 2 - (1 + r2) ** 2,
            16 * z * z + (y1 - y2) ** 2 - (r1 + r2) ** 2,
        ]
    )


def lemma4_jacobian(v: np.ndarray) -> np.ndarray:
    x, r1, r2, y1, y2 = v
    z = x / 2
    # d(z^2)/dx = z
    return np.array(
        [
            [z, -2 * r1, 0.0, 2 * y1, 0.0],
            [z, 0.0, -2 * r2, 0.0, 2 * y2],
            [16 * z, -2 * (1 + r1), 0.0, 2 * (1 + y1), 0.0],
            [64 * z, 0.0, -2 * (1 + r2), 0.0, 2 * (1 + y2)],
            [16 * z, -2 * (r1 + r2), -2 * (r1 + r2), 2 * (y1 - y2), -2 * (y1 - y2)],
        ]
    )


def e11_residual(z: float) -> float:
    """Relative residual of the quartic obtained after the half-angle substitutions."""
    lhs = 16 * 1260**2 * z * z + (64 + 15120 * z * z) ** 2
    rhs = (104 + 24570 * z * z) ** 2
    return (lhs - rhs) / rhs


def lemma4_closed_form() -> Lemma4Solution:
    """Solve via ``lambda = z**2`` and back-substitute the half-angle tangents."""
    a, b, c = QUADRATIC
    disc = math.sqrt(b * b - 4 * a * c)
    roots = sorted(((-b - disc) / (2 * a), (-b + disc) / (2 * a)))
    exact = sorted((4 / 945 * (7 - 4 * math.sqrt(3)), 4 / 945 * (7 + 4 * math.sqrt(3))))
    # z must satisfy z < 2/15 (s > 0) and z < 2/63 (t > 0)
    feasible = [lam for lam in exact if math.sqrt(lam) < 2 / 63]
    if len(feasible) != 1:
        raise DomainError(f"expected exactly one feasible root, got {feasible}")
    lam = feasible[0]
    z = math.sqrt(lam)
    # s = 1 and t = 1 also solve the rearranged equations but give cos = 0
    s = (2 - 15 * z) / (2 + 15 * z)
    t = (2 - 63 * z) / (2 + 63 * z)
    cos_a = (1 - s * s) / (1 + s * s)
    tan_a = 2 * s / (1 - s * s)
    cos_b = (1 - t * t) / (1 + t * t)
    tan_b = 2 * t / (1 - t * t)
    r1, r2 = z / cos_a, z / cos_b
    y1, y2 = z * tan_a, z * tan_b
    x = 2 * z
    res = lemma4_system(np.array([x, r1, r2, y1, y2]))
    details = {
        "quadratic_roots": roots,
        "exact_roots": exact,
        "quadratic_residual_rel": (a * lam * lam + b * lam + c) / c,
        "rejected_z": math.sqrt(exact[1]),
        "z_limit": 2 / 63,
        "s": s,
        "t": t,
        "e11_residual_rel": e11_residual(z),
    }
    return Lemma4Solution(x, z, lam, r1, r2, y1, y2, tuple(float(r) for r in res), "closed_form", details)


DEFAULT_START = (0.03, 0.03, 0.01, 0.02, 0.005)


def _newton(start: np.ndarray, maxiter: int, tol: float, tau: float = 0.9) -> tuple[np.ndarray, int]:
    """Newton with a fraction-to-the-boundary step limit.

    All five unknowns are positive at the wanted root, and the system also
    has a degenerate family at ``x = 0``; capping each step so that no
    component moves by more than ``tau`` of its value keeps the iterate away
    from that family. Growth is capped the same way so a single large step
    cannot throw the iterate across the basin.
    """
    v = start.astype(float)
    if np.any(v <= 0):
        raise ValueError("Newton start must be componentwise positive")
    for it in range(1, maxiter + 1):
        fv = lemma4_system(v)
        step = np.linalg.solve(lemma4_jacobian(v), -fv)
        change = np.max(np.abs(step) / v)
        alpha = min(1.0, tau / change) if change > 0 else 1.0
        v = v + alpha * step
        if np.max(np.abs(lemma4_system(v))) <= tol and np.max(np.abs(alpha * step) / v) < 1e-12:
            return v, it
    raise NoConvergence(f"Newton did not converge from {tuple(start)} in {maxiter} iterations")


def _admissible(v: np.ndarray) -> bool:
    x, r1, r2, y1, y2 = v
    return 0 < x / 2 < 2 / 63 and 0 < y2 < y1 and r1 > 0 and r2 > 0


def lemma4_numeric(
    start: tuple[float, ...] = DEFAULT_START,
    maxiter: int = 500,
    tol: float = 1e-15,
) -> Lemma4Solution:
    """Damped Newton on the original five-equation system.

    Falls back to a small grid of starts when the default start fails or
    converges to an inadmissible root.
    """
    starts = [np.array(start, dtype=float)]
    for sx in (0.02, 0.035, 0.05):
        for sy in (0.5, 1.0, 2.0):
            starts.append(np.array([sx, sx, sx / 3, sy * sx / 2, sy * sx / 6]))
    failures = []
    for s0 in starts:
        try:
            v, iters = _newton(s0, maxiter, tol)
        except (NoConvergence, np.linalg.LinAlgError, ValueError) as exc:
            failures.append(str(exc))
            continue
        if _admissible(v):
            x, r1, r2, y1, y2 = (float(c) for c in v)
            res = lemma4_system(v)
            details = {"start": s0.tolist(), "iterations": iters}
            return Lemma4Solution(
                x, x / 2, (x / 2) ** 2, r1, r2, y1, y2, tuple(float(r) for r in res), "newton", details
            )
        failures.append(f"inadmissible root {v.tolist()} from {s0.tolist()}")
    raise NoConvergence("; ".join(failures))


def lemma4_disks(sol: Lemma4Solution) -> tuple[Disk, Disk, Disk]:
    """The unit disk and the two small disks realized from a solution."""
    return (
        Disk(Point(0.0, 1.0), 1.0),
        Disk(Point(2 * sol.x, -sol.y1), sol.r1),
        Disk(Point(4 * sol.x, -sol.y2), sol.r2),
    )


# -- chord depths and gap cases ----------------------------------------------

def g(a: float, delta: float) -> float:
    """Depth of a chord of half-width ``a * delta`` below the top of a unit disk."""
    w = a * delta
    if not 0 <= w < 1:
        raise DomainError(f"g needs 0 <= a*delta < 1, got a={a}, delta={delta}")
    w2 = w * w
    return w2 / (1 + math.sqrt(1 - w2))


#: Pairs ``(a1, a2)`` whose ``g`` sums are bounded by ``0.9 delta``, with where they arise.
SANDWICH_PAIRS: tuple[tuple[int, int, str], ...] = (
    (5, 3, "f=0, direct offsets 5 and 3"),
    (6, 3, "f=0 relaxed and f=1"),
    (2, 2, "f=2"),
    (2, 3, "f=3"),
    (2, 4, "f=4"),
    (3, 3, "f=4"),
    (2, 5, "f=5"),
    (3, 4, "f=5"),
)

SANDWICH_PRECONDITIONS = (
    "Two large disks adjacent in the sandwich graph meet the dense line from opposite "
    "sides, and at most two large disks have their vertical diameter within any "
    "window of length 8*delta on one dense line.",
    "A large disk through one or two points of a dense line leaves the neighbouring "
    "bisector midpoints within 2*delta of each other, so the nearest small disks are "
    "pinned within 3*delta of its vertical diameter.",
    "Consequently a point next to such a disk is a singleton whenever the refined "
    "spacing exceeds the pairwise-tangent spacing; the g-sums below are the depth "
    "budgets that make each gap case work.",
)


@dataclass(frozen=True)
class SandwichCase:
    a1: int
    a2: int
    delta: float
    bound: float
    lhs: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs <= self.bound

    @property
    def slack(self) -> float:
        return self.bound - self.lhs


def sandwich_table(delta: float = REFINED_DELTA) -> list[SandwichCase]:
    """Evaluate every ``g(a1) + g(a2) <= 0.9 delta`` inequality of the gap cases.

    The claim only covers ``delta <= 1/29``; larger values are evaluated and
    reported as they come out.
    """
    if not 0 < 6 * delta < 1:
        raise DomainError("sandwich table needs 0 < 6*delta < 1")
    return [
        SandwichCase(a1, a2, delta, SANDWICH_FACTOR * delta, g(a1, delta) + g(a2, delta), note)
        for a1, a2, note in SANDWICH_PAIRS
    ]


def g_increasing(delta: float, a_max: int = 6) -> bool:
    vals = [g(a, delta) for a in range(1, a_max + 1)]
    return all(b > a for a, b in zip(vals, vals[1:]))


# -- flat tangent disks and clearance ----------------------------------------

@dataclass(frozen=True)
class Lemma1Report:
    delta: float
    ceiling: float
    left: Disk
    right: Disk
    radius_bisector: float
    radius_abc: float
    radius_formula: float
    relation: DiskRelation
    tangency_error: float

    @property
    def radius_error(self) -> float:
        return max(
            abs(self.left.radius - self.delta),
            abs(self.right.radius - self.delta),
            abs(self.radius_abc - self.delta),
            abs(self.radius_formula - self.delta),
        )

    @property
    def passed(self) -> bool:
        return self.radius_error <= 1e-12 * max(1.0, self.delta) and self.relation is DiskRelation.TANGENT


def lemma1_check(delta: float = PRELIM_DELTA, tol: Tolerance = DEFAULT_TOL) -> Lemma1Report:
    """Disks through ``(0,0),(delta,0)`` and ``(2delta,0),(3delta,0)`` touching ``y = h`` from below."""
    if not delta > 0:
        raise DomainError("delta must be positive")
    h = (1 - math.sqrt(3) / 2) * delta
    left = circumcircle(Point(0.0, 0.0), Point(delta, 0.0), Point(delta / 2, h))
    right = circumcircle(Point(2 * delta, 0.0), Point(3 * delta, 0.0), Point(5 * delta / 2, h))
    r_abc = circumradius_abc(Point(0.0, 0.0), Point(delta, 0.0), Point(delta / 2, h))
    # circle through (0,0),(delta,0) with top at height h
    r_formula = ((delta / 2) ** 2 + h * h) / (2 * h)
    return Lemma1Report(
        delta=delta,
        ceiling=h,
        left=left,
        right=right,
        radius_bisector=left.radius,
        radius_abc=r_abc,
        radius_formula=r_formula,
        relation=disks_disjoint(left, right, tol),
        tangency_error=abs(disk_slack(left, right)),
    )


def lemma2_depth(r: float, delta: float, halfwidth_steps: int = 4) -> float:
    """``r - sqrt(r**2 - (steps*delta)**2)``, evaluated without cancellation."""
    w = halfwidth_steps * delta
    if not (r > 0 and delta > 0 and 0 <= w < r):
        raise DomainError(f"need 0 <= steps*delta < r, got r={r}, delta={delta}, steps={halfwidth_steps}")
    return w * w / (r + math.sqrt(r * r - w * w))


@dataclass(frozen=True)
class Lemma2Report:
    delta: float
    depth: float
    depth_over_delta: float
    quadratic_bound: float
    ceiling_over_delta: float

    @property
    def passed(self) -> bool:
        return (
            self.depth_over_delta <= LEMMA2_CONSTANT
            and self.depth <= self.quadratic_bound
            and self.depth_over_delta < self.ceiling_over_delta
        )


def lemma2_check(delta: float = PRELIM_DELTA) -> Lemma2Report:
    """Worst case ``r = 1`` at four steps: clearance below ``0.1337 delta`` and ``8.02 delta**2``."""
    depth = lemma2_depth(1.0, delta, 4)
    return Lemma2Report(
        delta=delta,
        depth=depth,
        depth_over_delta=depth / delta,
        quadratic_bound=LEMMA2_QUADRATIC_CONSTANT * delta * delta,
        ceiling_over_delta=1 - math.sqrt(3) / 2,
    )
