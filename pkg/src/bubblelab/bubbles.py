"""Bubble sets: empty disks supporting every point, with or without disjointness.

A disk through two points ``p, q`` is parameterized by the signed offset ``t``
of its center along the unit normal of ``pq`` from their midpoint ``m``::

    center = m + t * u,   radius**2 = h**2 + t**2,   h = |pq| / 2

A third point ``s`` stays outside the disk exactly when ``a_s >= 2 t w_s``
with ``w_s = (s - m) . u`` and ``a_s = |s - m|**2 - h**2``, so every point
contributes one linear constraint on ``t`` and the empty disks through ``p, q``
form an interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np
from scipy.spatial import cKDTree

from . import circular
from .constructions import CHAIN_LARGE, CHAIN_SMALL, linear_count
from .delaunay import delaunay
from .errors import StructureMismatch
from .geometry import DEFAULT_TOL, Disk, PointSet, Tolerance
from .matching import maximum_matching

T_MAX_FACTOR = 1e6
STRUCTURES = ("collinear", "gadget", "chain", "grid", "none")


# -- bubble sets --------------------------------------------------------------

@dataclass
class BubbleSet:
    disks: list[Disk]
    #: point index -> index of one disk that point supports
    supports: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.disks)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "disks": [d.as_dict() for d in self.disks],
            "supports": {str(i): j for i, j in sorted(self.supports.items())},
        }

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> BubbleSet:
        disks = [Disk.from_xyr(d["cx"], d["cy"], d["r"]) for d in data["disks"]]
        supports = {int(i): int(j) for i, j in data.get("supports", {}).items()}
        return cls(disks, supports)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.disks:
            return np.zeros((0, 2)), np.zeros(0)
        c = np.array([[d.cx, d.cy] for d in self.disks])
        r = np.array([d.radius for d in self.disks])
        return c, r


@dataclass(frozen=True)
class Violation:
    kind: str  # unsupported | support_map | not_empty | overlap
    indices: tuple[int, ...]
    margin: float

    def as_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "indices": list(self.indices), "margin": self.margin}


@dataclass(frozen=True)
class ValidationReport:
    n_points: int
    n_disks: int
    require_disjoint: bool
    violations: tuple[Violation, ...]
    min_disjoint_slack: float | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "n_points": self.n_points,
            "n_disks": self.n_disks,
            "require_disjoint": self.require_disjoint,
            "min_disjoint_slack": self.min_disjoint_slack,
            "violations": [v.as_dict() for v in self.violations],
        }


def _pairwise_slack(c: np.ndarray, r: np.ndarray) -> np.ndarray:
    dist = np.hypot(c[:, None, 0] - c[None, :, 0], c[:, None, 1] - c[None, :, 1])
    return dist - (r[:, None] + r[None, :])


def validate(
    ps: PointSet,
    bubble: BubbleSet,
    require_disjoint: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> ValidationReport:
    """List every way ``bubble`` fails to be a (disjoint) bubble set of ``ps``."""
    pts = ps.coords
    c, r = bubble.arrays()
    out: list[Violation] = []
    if len(r):
        # gaps[i, j] = distance from point j to the boundary of disk i, signed
        gaps = np.hypot(pts[None, :, 0] - c[:, None, 0], pts[None, :, 1] - c[:, None, 1]) - r[:, None]
    else:
        gaps = np.zeros((0, len(pts)))

    on = np.abs(gaps) <= tol.eps_incidence
    for i in range(len(pts)):
        j = bubble.supports.get(i)
        if j is not None and 0 <= j < len(r) and on[j, i]:
            continue
        if len(r) and on[:, i].any():
            bad = float(gaps[j, i]) if j is not None and 0 <= j < len(r) else math.inf
            out.append(Violation("support_map", (i, -1 if j is None else j), bad))
        else:
            margin = float(np.min(np.abs(gaps[:, i]))) if len(r) else math.inf
            out.append(Violation("unsupported", (i,), margin))

    for d in range(len(r)):
        inside = np.nonzero(gaps[d] < -tol.eps_empty)[0]
        for i in inside:
            out.append(Violation("not_empty", (d, int(i)), float(gaps[d, i])))

    min_slack = None
    if require_disjoint and len(r) > 1:
        slack = _pairwise_slack(c, r)
        iu = np.triu_indices(len(r), 1)
        min_slack = float(slack[iu].min())
        for a, b in zip(*iu):
            if slack[a, b] < -tol.eps_disjoint:
                out.append(Violation("overlap", (int(a), int(b)), float(slack[a, b])))
    return ValidationReport(len(pts), len(r), require_disjoint, tuple(out), min_slack)


# -- pencil of circles through two points ------------------------------------

@dataclass(frozen=True)
class PencilInterval:
    p: int
    q: int
    t_lo: float
    t_hi: float
    #: a finite end is closed (the critical point sits on the circle, which is
    #: allowed); an end produced by the T_max clamp is marked open
    lo_closed: bool
    hi_closed: bool
    #: index of the point that fixes each end, or -1 for the clamp
    lo_witness: int
    hi_witness: int
    mid: tuple[float, float]
    normal: tuple[float, float]
    half: float

    @property
    def lo_bounded(self) -> bool:
        return self.lo_witness >= 0

    @property
    def hi_bounded(self) -> bool:
        return self.hi_witness >= 0

    def disk(self, t: float) -> Disk:
        cx = self.mid[0] + t * self.normal[0]
        cy = self.mid[1] + t * self.normal[1]
        return Disk.from_xyr(cx, cy, math.hypot(self.half, t))

    def representative(self) -> float:
        """Midpoint when both ends are fixed by points or both are clamps.

        With one clamped end the midpoint would be a disk of radius near
        ``T_max``; instead step ``|pq|`` away from the finite end, or half the
        width if that is smaller.
        """
        if self.lo_bounded == self.hi_bounded:
            return 0.5 * (self.t_lo + self.t_hi)
        step = min(2.0 * self.half, 0.5 * (self.t_hi - self.t_lo))
        return self.t_lo + step if self.lo_bounded else self.t_hi - step

    def as_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
            "lo_witness": self.lo_witness,
            "hi_witness": self.hi_witness,
        }


def _pencil_frame(ps: PointSet, p_idx: int, q_idx: int):
    a, b = ps.coords[p_idx], ps.coords[q_idx]
    m = 0.5 * (a + b)
    v = b - a
    length = math.hypot(v[0], v[1])
    u = np.array([-v[1], v[0]]) / length
    return m, u, 0.5 * length


def pencil_interval(
    p_idx: int, q_idx: int, ps: PointSet, t_max: float | None = None
) -> PencilInterval | None:
    """All offsets ``t`` whose disk through ``p, q`` has no point strictly inside."""
    if p_idx == q_idx:
        raise ValueError("pencil needs two distinct points")
    m, u, h = _pencil_frame(ps, p_idx, q_idx)
    if t_max is None:
        t_max = T_MAX_FACTOR * max(ps.diameter(), 2.0 * h)
    mask = np.ones(len(ps), dtype=bool)
    mask[[p_idx, q_idx]] = False
    idx = np.nonzero(mask)[0]
    rel = ps.coords[idx] - m
    w = rel @ u
    a = (rel**2).sum(axis=1) - h * h

    # a point on the segment pq lies inside every disk of the pencil
    flat = w == 0.0
    if np.any(flat & (a < 0)):
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        crit = a / (2.0 * w)

    lo, lo_w = -t_max, -1
    hi, hi_w = t_max, -1
    up = w > 0
    if up.any():
        k = int(np.argmin(np.where(up, crit, np.inf)))
        if crit[k] < hi:
            hi, hi_w = float(crit[k]), int(idx[k])
    down = w < 0
    if down.any():
        k = int(np.argmax(np.where(down, crit, -np.inf)))
        if crit[k] > lo:
            lo, lo_w = float(crit[k]), int(idx[k])
    if lo > hi:
        if lo - hi > 1e-12 * max(1.0, abs(lo), abs(hi)):
            return None
        lo = hi = 0.5 * (lo + hi)
    return PencilInterval(
        p_idx, q_idx, lo, hi, lo_w >= 0, hi_w >= 0, lo_w, hi_w,
        (float(m[0]), float(m[1])), (float(u[0]), float(u[1])), h,
    )


# -- singleton disks ----------------------------------------------------------

def _singleton(ps: PointSet, i: int, tree: cKDTree, c: np.ndarray, r: np.ndarray) -> Disk:
    """A disk touching only point ``i``, clear of the other points and of the given disks.

    Its radius is a third of the smaller of the nearest-point distance and the
    gap to the nearest disk, so the whole disk stays within two thirds of
    either clearance.
    """
    p = ps.coords[i]
    if len(ps) > 1:
        dist, nb = tree.query(p, k=2)
        nn, away = float(dist[1]), p - ps.coords[nb[1]]
    else:
        nn, away = math.inf, np.array([1.0, 0.0])
    gap = math.inf
    if len(r):
        g = np.hypot(c[:, 0] - p[0], c[:, 1] - p[1]) - r
        gap = float(g.min())
    rho = min(nn, gap) / 3.0
    if not math.isfinite(rho):
        rho = 1.0
    away = away / math.hypot(away[0], away[1])
    return Disk.from_xyr(float(p[0] + rho * away[0]), float(p[1] + rho * away[1]), rho)


# -- Delaunay matching witness ------------------------------------------------

def _pair_disk(ps: PointSet, u: int, v: int) -> Disk | None:
    iv = pencil_interval(u, v, ps)
    if iv is None:
        return None
    return iv.disk(iv.representative())


def bubble_from_matching(ps: PointSet) -> BubbleSet:
    """One disk per matched Delaunay edge plus one singleton per unmatched point.

    The disks are empty and supported but may overlap.
    """
    if len(ps) < 2:
        raise ValueError("need at least two points")
    tri = delaunay(ps)
    match = maximum_matching(len(ps), tri.edges)
    disks: list[Disk] = []
    supports: dict[int, int] = {}
    loose = list(match.unmatched)
    for u, v in match.pairs:
        d = _pair_disk(ps, u, v)
        if d is None:
            loose += [u, v]
            continue
        supports[u] = supports[v] = len(disks)
        disks.append(d)
    tree = cKDTree(ps.coords)
    for i in sorted(loose):
        supports[i] = len(disks)
        disks.append(_singleton(ps, i, tree, np.zeros((0, 2)), np.zeros(0)))
    return BubbleSet(disks, supports)


# -- disjoint bubble sets -----------------------------------------------------

EFFORT = {
    "fast": {"samples": 33, "sweeps": 20, "repair": False},
    "thorough": {"samples": 129, "sweeps": 60, "repair": True},
}


@dataclass
class SolveResult:
    bubble: BubbleSet
    upper: int
    lower: int
    method_log: list[str]
    seed: int
    effort: str
    lower_bound: LowerBound | None = None

    @property
    def log_text(self) -> str:
        return "\n".join(self.method_log)

    def as_dict(self) -> dict[str, Any]:
        return {
            "upper": self.upper,
            "lower": self.lower,
            "lower_bound": None if self.lower_bound is None else self.lower_bound.as_dict(),
            "seed": self.seed,
            "effort": self.effort,
            "method_log": self.log_text,
            "bubble": self.bubble.to_json_dict(),
        }


class _PairSearch:
    """Offsets of the matched pairs, tuned so their disks stop overlapping."""

    def __init__(self, ps: PointSet, intervals: list[PencilInterval], samples: int, cap: float):
        self.iv = intervals
        self.active = [True] * len(intervals)
        self.grid = []
        for iv in intervals:
            lo, hi = max(iv.t_lo, -cap), min(iv.t_hi, cap)
            if lo > hi:
                lo = hi = iv.representative()
            # equal steps in the angle under which pq is seen from the center
            phi = np.linspace(math.atan2(lo, iv.half), math.atan2(hi, iv.half), samples)
            ts = np.clip(iv.half * np.tan(phi), iv.t_lo, iv.t_hi)
            ts = np.unique(np.append(ts, iv.representative()))
            self.grid.append(ts)
        self.t = np.array([iv.representative() for iv in intervals])
        self.c = np.zeros((len(intervals), 2))
        self.r = np.zeros(len(intervals))
        for i in range(len(intervals)):
            self._set(i, self.t[i])

    def _geom(self, i: int, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        iv = self.iv[i]
        c = np.column_stack((iv.mid[0] + ts * iv.normal[0], iv.mid[1] + ts * iv.normal[1]))
        return c, np.hypot(iv.half, ts)

    def _set(self, i: int, t: float) -> None:
        c, r = self._geom(i, np.array([t]))
        self.t[i], self.c[i], self.r[i] = t, c[0], r[0]

    def overlap_of(self, i: int, c: np.ndarray, r: np.ndarray, guard: float) -> np.ndarray:
        """Total overlap depth of candidate disks ``(c, r)`` for pair ``i`` with the other active pairs."""
        others = [j for j in range(len(self.iv)) if self.active[j] and j != i]
        if not others:
            return np.zeros(len(r))
        oc, orr = self.c[others], self.r[others]
        dist = np.hypot(c[:, None, 0] - oc[None, :, 0], c[:, None, 1] - oc[None, :, 1])
        return np.maximum(0.0, r[:, None] + orr[None, :] + guard - dist).sum(axis=1)

    def slack_matrix(self) -> tuple[list[int], np.ndarray]:
        act = [i for i, a in enumerate(self.active) if a]
        if len(act) < 2:
            return act, np.full((len(act), len(act)), np.inf)
        s = _pairwise_slack(self.c[act], self.r[act])
        np.fill_diagonal(s, np.inf)
        return act, s

    def improve(self, rng: np.random.Generator, sweeps: int, guard: float, only: Iterable[int] | None = None) -> int:
        focus = None if only is None else set(only)
        for sweep in range(sweeps):
            act, s = self.slack_matrix()
            bad = [act[a] for a in range(len(act)) if (s[a] < guard).any()]
            if focus is not None:
                bad = [i for i in bad if i in focus] or bad
            if not bad:
                return sweep
            moved = False
            for i in rng.permutation(bad):
                i = int(i)
                cand_c, cand_r = self._geom(i, self.grid[i])
                pen = self.overlap_of(i, cand_c, cand_r, guard)
                # least overlap first, then the smallest disk
                best = int(np.lexsort((cand_r, pen))[0])
                cur = self.overlap_of(i, self.c[i : i + 1], self.r[i : i + 1], guard)[0]
                if pen[best] < cur or (pen[best] == cur and cand_r[best] < self.r[i]):
                    if self.grid[i][best] != self.t[i]:
                        moved = True
                    self._set(i, float(self.grid[i][best]))
            if not moved:
                return sweep + 1
        return sweeps


def disjoint_bubbles(
    ps: PointSet,
    seed: int = 0,
    effort: str = "fast",
    tol: Tolerance = DEFAULT_TOL,
    structure: str | None = None,
) -> SolveResult:
    """A pairwise-disjoint bubble set, always validated before it is returned.

    Start from a maximum matching of the Delaunay graph, slide every pair's
    disk along its pencil interval to remove overlaps, and demote the pair
    with the most negative combined slack to two singletons until no overlap
    is left. The seed only fixes the order in which pairs are revisited.
    """
    if effort not in EFFORT:
        raise ValueError(f"effort must be one of {sorted(EFFORT)}")
    opts = EFFORT[effort]
    rng = np.random.default_rng(seed)
    n = len(ps)
    log = [f"n={n} seed={seed} effort={effort}"]
    guard = 0.5 * tol.eps_disjoint

    pairs: list[tuple[int, int]] = []
    intervals: list[PencilInterval] = []
    loose: list[int] = []
    tri_edges: list[tuple[int, int]] = []
    if n >= 2:
        tri = delaunay(ps)
        tri_edges = tri.edges
        match = maximum_matching(n, tri_edges)
        loose = list(match.unmatched)
        for u, v in match.pairs:
            iv = pencil_interval(u, v, ps)
            if iv is None:
                loose += [u, v]
            else:
                pairs.append((u, v))
                intervals.append(iv)
        log.append(f"delaunay edges={len(tri_edges)} degenerate={tri.degenerate} matched pairs={len(pairs)}")
    else:
        loose = list(range(n))

    cap = 4.0 * max(ps.diameter(), 1e-12)
    search = _PairSearch(ps, intervals, opts["samples"], cap)
    used = search.improve(rng, opts["sweeps"], guard)
    log.append(f"local search sweeps={used}")

    demoted = 0
    while True:
        act, s = search.slack_matrix()
        neg = np.where(s < guard, np.minimum(s, 0.0) - guard, 0.0)
        combined = neg.sum(axis=1)
        if not len(act) or combined.min() >= 0.0:
            break
        worst = act[int(np.argmin(combined))]  # argmin takes the lowest index on ties
        partners = [act[b] for b in np.nonzero(neg[act.index(worst)] < 0)[0]]
        search.active[worst] = False
        loose += list(pairs[worst])
        demoted += 1
        search.improve(rng, opts["sweeps"], guard, only=partners)
    log.append(f"demoted pairs={demoted}")

    c_list = [search.c[i] for i in range(len(pairs)) if search.active[i]]
    r_list = [search.r[i] for i in range(len(pairs)) if search.active[i]]
    disks = [Disk.from_xyr(float(c[0]), float(c[1]), float(r)) for c, r in zip(c_list, r_list)]
    supports: dict[int, int] = {}
    k = 0
    for i, (u, v) in enumerate(pairs):
        if search.active[i]:
            supports[u] = supports[v] = k
            k += 1

    if opts["repair"] and loose:
        added = _repair_pairs(ps, tri_edges, sorted(loose), disks, supports, opts["samples"], cap, guard)
        log.append(f"re-paired loose points={added}")
        loose = [i for i in loose if i not in supports]

    tree = cKDTree(ps.coords)
    n_paired, covered = len(disks), 0
    for i in sorted(loose):
        if i in supports:
            continue
        c, r = BubbleSet(disks).arrays()
        if len(r):
            gap = np.hypot(c[:, 0] - ps.coords[i, 0], c[:, 1] - ps.coords[i, 1]) - r
            j = int(np.argmin(np.abs(gap)))
            if abs(gap[j]) <= tol.eps_incidence:
                supports[i] = j
                covered += 1
                continue
        supports[i] = len(disks)
        disks.append(_singleton(ps, i, tree, c, r))
    log.append(f"singletons={len(disks) - n_paired} already on a boundary={covered}")

    bubble = BubbleSet(disks, supports)
    report = validate(ps, bubble, require_disjoint=True, tol=tol)
    if not report.passed:
        # numerical trouble: fall back to singletons around every point
        log.append(f"validation failed with {len(report.violations)} violations; using singletons")
        disks, supports = [], {}
        for i in range(n):
            c, r = BubbleSet(disks).arrays()
            supports[i] = len(disks)
            disks.append(_singleton(ps, i, tree, c, r))
        bubble = BubbleSet(disks, supports)
    log.append(f"upper={len(bubble)}")

    lb = None
    try:
        lb = certified_lower(ps, structure)
    except StructureMismatch as exc:
        log.append(f"no lower bound: {exc}")
    lower = lb.value if lb is not None and lb.certified else 0
    if lb is not None:
        log.append(f"lower={lb.value} certified={lb.certified} ({lb.reason})")
    return SolveResult(bubble, len(bubble), lower, log, seed, effort, lb)


def _repair_pairs(
    ps: PointSet,
    edges: list[tuple[int, int]],
    loose: list[int],
    disks: list[Disk],
    supports: dict[int, int],
    samples: int,
    cap: float,
    guard: float,
) -> int:
    """Give two loose Delaunay neighbours one shared disk when it fits; returns pairs added."""
    free = set(loose)
    added = 0
    for u, v in edges:
        if u not in free or v not in free:
            continue
        iv = pencil_interval(u, v, ps)
        if iv is None:
            continue
        lo, hi = max(iv.t_lo, -cap), min(iv.t_hi, cap)
        if lo > hi:
            continue
        phi = np.linspace(math.atan2(lo, iv.half), math.atan2(hi, iv.half), samples)
        ts = np.clip(iv.half * np.tan(phi), iv.t_lo, iv.t_hi)
        cand_c = np.column_stack((iv.mid[0] + ts * iv.normal[0], iv.mid[1] + ts * iv.normal[1]))
        cand_r = np.hypot(iv.half, ts)
        c, r = BubbleSet(disks).arrays()
        if len(r):
            dist = np.hypot(cand_c[:, None, 0] - c[None, :, 0], cand_c[:, None, 1] - c[None, :, 1])
            ok = (dist - cand_r[:, None] - r[None, :] >= guard).all(axis=1)
        else:
            ok = np.ones(len(ts), dtype=bool)
        if not ok.any():
            continue
        best = int(np.argmin(np.where(ok, cand_r, np.inf)))
        supports[u] = supports[v] = len(disks)
        disks.append(Disk.from_xyr(float(cand_c[best, 0]), float(cand_c[best, 1]), float(cand_r[best])))
        free -= {u, v}
        added += 1
    return added


# -- lower bounds -------------------------------------------------------------

@dataclass(frozen=True)
class LowerBound:
    value: int
    certified: bool
    structure: str
    reason: str
    #: slack term the bound leaves unresolved, e.g. "-O(k)"; empty when exact
    unresolved_slack: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "certified": self.certified,
            "structure": self.structure,
            "reason": self.reason,
            "unresolved_slack": self.unresolved_slack,
        }


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise StructureMismatch(msg)


def _gadget_margins_positive(n: int) -> bool:
    return all(circular.case_report_disk(n, c).margin > 0 for c in ("case1", "case2"))


def certified_lower(ps: PointSet, structure: str | None = None) -> LowerBound:
    """Lower bound on the number of disjoint bubbles for a recognized construction.

    ``structure`` defaults to the one recorded in the point set's metadata;
    the labels and metadata must agree with it.
    """
    n = len(ps)
    if structure is None:
        structure = ps.meta.get("structure", "none")
    if structure not in STRUCTURES:
        raise ValueError(f"structure must be one of {STRUCTURES}")
    if structure == "none":
        return LowerBound(0, True, "none", "no structure recognized")
    _require(ps.labels is not None, f"structure {structure!r} needs point labels")
    _require(ps.meta.get("structure") == structure,
             f"point set was generated as {ps.meta.get('structure')!r}, not {structure!r}")
    _require("padding" not in ps.meta, "padded point sets carry no certificate")

    if structure == "collinear":
        v = ps.coords - ps.coords[0]
        span = v[np.argmax(np.hypot(v[:, 0], v[:, 1]))]
        cross = np.abs(v[:, 0] * span[1] - v[:, 1] * span[0])
        _require(bool(np.all(cross <= 1e-9 * max(1.0, float(span @ span)))), "points are not collinear")
        return LowerBound(math.ceil(n / 2), True, structure,
                          "an empty disk holds at most two collinear points on its boundary")

    if structure == "gadget":
        _require(n == ps.meta.get("n") and tuple(ps.labels[0]) == (0, 0), "gadget labels do not match")
        rad = float(ps.meta.get("radius", 1.0))
        dist = np.hypot(*(ps.coords[1:] - ps.coords[0]).T)
        _require(bool(np.all(np.abs(dist - rad) <= 1e-9 * rad)), "boundary points are not on one circle")
        if n % 2 == 0 and n >= 174 and _gadget_margins_positive(n):
            return LowerBound(n // 2 + 1, True, structure,
                              f"tangency margins positive at n={n}: one extra disk is forced")
        return LowerBound(math.ceil((n - 1) / 2), True, structure,
                          "each disk holds at most two boundary points")

    if structure == "chain":
        m = int(ps.meta.get("m", 0))
        _require(m >= 1 and n == (CHAIN_SMALL + CHAIN_LARGE) * m, "chain size does not match its metadata")
        ok = _gadget_margins_positive(CHAIN_SMALL) and all(
            circular.case_report_line(CHAIN_LARGE, s).margin > 0 for s in ("i", "ii", "iii")
        )
        if not ok:
            return LowerBound(math.ceil(n / 2), False, structure, "tangency margins not all positive")
        return LowerBound(n // 2 + 2 * m, True, structure,
                          "every gadget forces one disk beyond half its points")

    # grid
    j, k, delta = int(ps.meta["j"]), int(ps.meta["k"]), ps.meta["delta"]
    _require(n == linear_count(j, k, delta), "grid size does not match its metadata")
    return LowerBound(math.ceil((n + (j - 1) * k) / 2), False, structure,
                      "counting bound without its lower-order correction", "-O(k)")


BOUND_SCHEMES = ("prelim_linear", "refined_grid", "alternating")


def bound_constants(scheme: str, delta: Fraction | None = None) -> Fraction:
    """Denominator ``c`` in a lower bound of the form ``n/2 + n/c``."""
    if scheme == "prelim_linear":
        d = Fraction(1, 60) if delta is None else Fraction(delta)
        return 16 / d + 6
    if scheme == "refined_grid":
        d = Fraction(1, 29) if delta is None else Fraction(delta)
        return 8 / d + 4
    if scheme == "alternating":
        return Fraction(CHAIN_SMALL + CHAIN_LARGE, 2)
    raise ValueError(f"scheme must be one of {BOUND_SCHEMES}")
