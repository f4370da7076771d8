"""Tangency certificates for the gadget lower bounds.

A gadget has center ``p`` and boundary points spaced ``2*theta`` apart on a
circle of radius ``R`` (``theta = pi/(n-1)``). A disk ``Q_i`` through two
consecutive boundary points has its center ``o_i`` on their bisector ray at
distance ``d`` from ``p`` and radius

    r_i**2 = d**2 - 2 d R cos(theta) + R**2.

It is pushed against an obstacle until it touches:

* ``disk`` mode: a disk ``Q`` of radius ``r`` centered at distance ``r`` from
  ``p``, seen from ``p`` at angle ``phi`` from ``o_i``, so
  ``(r + r_i)**2 = r**2 + d**2 - 2 r d cos(phi)``;
* ``line`` mode: a line at distance ``R cos(theta)`` from ``p`` whose normal
  makes angle ``phi`` with ``p o_i``, so ``d cos(phi) + r_i = R cos(theta)``.

Two such disks at angular separation ``psi`` have
``|o_1 o_2|**2 = d_1**2 + d_2**2 - 2 d_1 d_2 cos(psi)``; a positive
``margin = r_1 + r_2 - |o_1 o_2|`` means they overlap.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

from .constructions import GadgetSpec, gadget
from .errors import NoRoot
from .geometry import Disk, Point, PointSet
from .rootfind import bracketed_root

Mode = Literal["disk", "line"]

#: Per case: (angle to o_1, angle to o_2, angle o_1 p o_2), in units of theta.
DISK_CASES: dict[str, tuple[float, float, float]] = {
    "case1": (3.5, 7.5, 4.0),
    "case2": (4.0, 8.0, 4.0),
}
LINE_SUBCASES: dict[str, tuple[float, float, float]] = {
    "i": (4.0, 8.0, 4.0),
    "ii": (4.0, 10.0, 6.0),
    "iii": (6.0, 10.0, 4.0),
}
#: Boundary-point pairs (1-based) supporting Q_1 and Q_2 in each case.
DISK_SUPPORTS = {"case1": ((2, 3), (4, 5)), "case2": ((3, 4), (5, 6))}
LINE_SUPPORTS = {"i": ((3, 4), (5, 6)), "ii": ((3, 4), (6, 7)), "iii": ((4, 5), (6, 7))}

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class TangencyProblem:
    theta: float
    phi: float
    mode: Mode = "disk"
    #: radius of the obstacle disk Q; defaults to R / (2 cos theta)
    r: float | None = None
    #: gadget radius R
    radius: float = 1.0

    def __post_init__(self) -> None:
        if not 0 < self.theta < math.pi / 8:
            raise ValueError(f"theta must lie in (0, pi/8), got {self.theta}")
        half_steps = 2 * self.phi / self.theta
        if self.phi <= 0 or abs(half_steps - round(half_steps)) > 1e-9:
            raise ValueError("phi must be a positive multiple of theta/2")
        if self.mode not in ("disk", "line"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.r is not None and not self.r > 0:
            raise ValueError("obstacle radius must be positive")
        if not self.radius > 0:
            raise ValueError("gadget radius must be positive")

    @property
    def obstacle_radius(self) -> float:
        return self.radius / (2.0 * math.cos(self.theta)) if self.r is None else self.r

    def support_radius(self, d: float) -> float:
        """Radius of the disk through two consecutive boundary points, centered at distance ``d``."""
        c = math.cos(self.theta)
        return math.sqrt(max(d * d - 2.0 * d * self.radius * c + self.radius**2, 0.0))

    def tangency_gap(self, d: float) -> float:
        """Signed violation of the tangency condition; zero at the solution."""
        ri = self.support_radius(d)
        if self.mode == "disk":
            r = self.obstacle_radius
            return ri + r - math.sqrt(r * r + d * d - 2.0 * r * d * math.cos(self.phi))
        return d * math.cos(self.phi) + ri - self.radius * math.cos(self.theta)

    def bracket(self) -> tuple[float, float]:
        """Interval holding exactly one root of :meth:`tangency_gap`.

        In disk mode the touching disk has its center outside the gadget
        circle, ``d`` in ``[R cos theta, 2R]``. In line mode the gap is convex
        in ``d`` with its minimum at ``R (cos theta - sin theta cot phi)``; the
        root near the boundary lies between that minimum and ``R cos theta``.
        """
        R, t = self.radius, self.theta
        if self.mode == "disk":
            return R * math.cos(t), 2.0 * R
        lo = R * (math.cos(t) - math.sin(t) / math.tan(self.phi)) if self.phi < math.pi / 2 else 0.0
        return max(lo, 0.0), R * math.cos(t)

    def residuals(self, d: float, ri: float) -> tuple[float, float]:
        """Residuals of the incidence and tangency equations at ``(d, ri)``."""
        R, c = self.radius, math.cos(self.theta)
        incidence = ri * ri - (d * d - 2.0 * d * R * c + R * R)
        if self.mode == "disk":
            r = self.obstacle_radius
            tangency = (r + ri) ** 2 - (r * r + d * d - 2.0 * r * d * math.cos(self.phi))
        else:
            tangency = d * math.cos(self.phi) + ri - R * c
        return incidence, tangency


@dataclass(frozen=True)
class PairDiskSolution:
    d: float
    r_i: float
    residual: float


def solve_tangent_pair(prob: TangencyProblem) -> PairDiskSolution:
    """Distance ``d`` and radius ``r_i`` of the disk that touches the obstacle."""
    lo, hi = prob.bracket()
    try:
        d = bracketed_root(prob.tangency_gap, lo, hi)
    except NoRoot as exc:
        raise NoRoot(
            f"{prob.mode} mode, theta={prob.theta:.6g}, phi={prob.phi:.6g}: {exc}"
        ) from None
    ri = prob.support_radius(d)
    residual = max(abs(v) for v in prob.residuals(d, ri))
    return PairDiskSolution(d, ri, residual)


@dataclass(frozen=True)
class CaseReport:
    """Solved values for one proof case.

    ``r`` is the radius of the obstacle disk ``Q`` in disk mode and the
    distance from ``p`` to the obstacle line in line mode.
    """

    mode: Mode
    n_or_k: int
    case_id: str
    theta: float
    r: float
    d1: float
    d2: float
    r1: float
    r2: float
    o1o2: float
    r1_plus_r2: float
    margin: float
    phi1: float
    phi2: float
    psi: float
    residual: float
    radius: float = 1.0
    reconstructed: bool = False

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)

    @property
    def overlapping(self) -> bool:
        return self.margin > 0

    def as_dict(self) -> dict:
        out = asdict(self)
        out["theta_deg"] = self.theta_deg
        return out


def _assemble(
    mode: Mode,
    n: int,
    case_id: str,
    angles: tuple[float, float, float],
    r: float | None,
    radius: float,
    reconstructed: bool,
) -> CaseReport:
    theta = math.pi / (n - 1)
    a1, a2, apsi = (a * theta for a in angles)
    p1 = TangencyProblem(theta, a1, mode, r, radius)
    p2 = TangencyProblem(theta, a2, mode, r, radius)
    s1, s2 = solve_tangent_pair(p1), solve_tangent_pair(p2)
    o1o2 = math.sqrt(max(s1.d**2 + s2.d**2 - 2.0 * s1.d * s2.d * math.cos(apsi), 0.0))
    rsum = s1.r_i + s2.r_i
    r_out = p1.obstacle_radius if mode == "disk" else radius * math.cos(theta)
    return CaseReport(
        mode=mode,
        n_or_k=n,
        case_id=case_id,
        theta=theta,
        r=r_out,
        d1=s1.d,
        d2=s2.d,
        r1=s1.r_i,
        r2=s2.r_i,
        o1o2=o1o2,
        r1_plus_r2=rsum,
        margin=rsum - o1o2,
        phi1=a1,
        phi2=a2,
        psi=apsi,
        residual=max(s1.residual, s2.residual),
        radius=radius,
        reconstructed=reconstructed,
    )


def case_report_disk(n: int, case_id: str = "case2", radius: float = 1.0) -> CaseReport:
    """Solve the pair of disks pressed against ``Q`` in the ``n``-gadget.

    ``case2``: ``Q`` passes through ``p, q_1, q_2``. ``case1``: ``Q`` passes
    through ``p, q_1`` only; its center is taken half a step from ``q_1``
    (a reconstruction, flagged in the report).
    """
    if n < 10 or n % 2:
        raise ValueError(f"disk cases need an even n >= 10, got {n}")
    if case_id not in DISK_CASES:
        raise ValueError(f"unknown case {case_id!r}; expected one of {sorted(DISK_CASES)}")
    theta = math.pi / (n - 1)
    if case_id == "case1":
        r = radius / (2.0 * math.cos(theta / 2))
        return _assemble("disk", n, case_id, DISK_CASES[case_id], r, radius, True)
    return _assemble("disk", n, case_id, DISK_CASES[case_id], None, radius, False)


def case_report_line(k: int, subcase: str = "i", radius: float = 1.0) -> CaseReport:
    """Solve the pair of disks pressed against a supporting line of the ``k``-gadget."""
    if k < 14 or k % 2:
        raise ValueError(f"line subcases need an even k >= 14, got {k}")
    if subcase not in LINE_SUBCASES:
        raise ValueError(f"unknown subcase {subcase!r}; expected one of {sorted(LINE_SUBCASES)}")
    return _assemble("line", k, subcase, LINE_SUBCASES[subcase], None, radius, False)


@dataclass(frozen=True)
class ScanEntry:
    n: int
    margin: float | None
    error: str | None = None


@dataclass(frozen=True)
class ScanResult:
    kind: Mode
    case_id: str
    entries: tuple[ScanEntry, ...]

    @property
    def threshold(self) -> int | None:
        """Smallest scanned ``n`` with a positive margin."""
        return next((e.n for e in self.entries if e.margin is not None and e.margin > 0), None)

    @property
    def positive_from(self) -> int | None:
        """Smallest scanned ``n`` from which every later margin is positive."""
        start = None
        for e in self.entries:
            if e.margin is not None and e.margin > 0:
                start = e.n if start is None else start
            else:
                start = None
        return start

    @property
    def all_positive(self) -> bool:
        return all(e.margin is not None and e.margin > 0 for e in self.entries)


def margin_scan(kind: Mode, case_id: str, n_range: tuple[int, int]) -> ScanResult:
    """Margins for every even ``n`` in the inclusive range; unsolvable ``n`` are recorded."""
    lo, hi = n_range
    if not (10 <= lo <= hi <= 100_000):
        raise ValueError("scan range must lie within [10, 100000]")
    report = case_report_disk if kind == "disk" else case_report_line
    entries = []
    for n in range(lo + (lo % 2), hi + 1, 2):
        try:
            entries.append(ScanEntry(n, report(n, case_id).margin))
        except (NoRoot, ValueError) as exc:
            entries.append(ScanEntry(n, None, str(exc)))
    return ScanResult(kind, case_id, tuple(entries))


@dataclass(frozen=True)
class Realization:
    """Concrete geometry of one proof case.

    In disk mode ``obstacle`` is the disk ``Q``; in line mode it is ``None``
    and the obstacle is the vertical line ``x = line_x``.
    """

    report: CaseReport
    points: PointSet
    obstacle: Disk | None
    q1: Disk
    q2: Disk
    obstacle_support: tuple[int, ...]
    q1_support: tuple[int, int]
    q2_support: tuple[int, int]
    line_x: float | None = None


def _polar(d: float, angle: float) -> Point:
    return Point(d * math.cos(angle), d * math.sin(angle))


def realize_case(n: int, case_id: str = "case2", radius: float = 1.0) -> Realization:
    """Place the gadget and the solved disks in the plane.

    The gadget is rotated so that the obstacle's center direction is the +x
    axis. Point indices follow :func:`gadget`: ``0`` is the center and ``i``
    is ``q_i``.
    """
    if case_id in DISK_CASES:
        rep = case_report_disk(n, case_id, radius)
        supports = DISK_SUPPORTS[case_id]
    elif case_id in LINE_SUBCASES:
        rep = case_report_line(n, case_id, radius)
        supports = LINE_SUPPORTS[case_id]
    else:
        raise ValueError(f"unknown case {case_id!r}")
    theta = rep.theta
    if case_id == "case1":
        # q_1 on the axis; Q's center half a step below it
        rotation, obstacle_angle = 0.0, -theta / 2
        obstacle_support: tuple[int, ...] = (0, 1)
    else:
        # q_1, q_2 symmetric about the axis
        rotation, obstacle_angle = -theta, 0.0
        obstacle_support = (0, 1, 2) if rep.mode == "disk" else (1, 2)
    ps = gadget(GadgetSpec(n, radius, rotation=rotation))
    o1 = _polar(rep.d1, obstacle_angle + rep.phi1)
    o2 = _polar(rep.d2, obstacle_angle + rep.phi2)
    q1 = Disk(o1, rep.r1)
    q2 = Disk(o2, rep.r2)
    if rep.mode == "disk":
        obstacle = Disk(_polar(rep.r, obstacle_angle), rep.r)
        return Realization(rep, ps, obstacle, q1, q2, obstacle_support, supports[0], supports[1])
    return Realization(
        rep, ps, None, q1, q2, obstacle_support, supports[0], supports[1], line_x=rep.r
    )

