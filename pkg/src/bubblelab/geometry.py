"""Planar primitives: points, point sets, disks and the incidence predicates.

Every predicate that compares a distance with a radius takes a
:class:`Tolerance`; the three epsilons are kept separate so that a caller can
tell "on the boundary" apart from "strictly inside" without conflating it with
disk-disk contact.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Iterator, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import CollinearInput, NoIntersection

#: Minimum distance between two points of a :class:`PointSet`.
MIN_SEPARATION = 1e-12

#: Environment variable that overrides all three epsilons at once.
EPS_ENV_VAR = "BUBBLELAB_EPS"


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in Point({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def dist(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"disk radius must be finite and positive, got {self.radius}")

    @classmethod
    def from_xyr(cls, cx: float, cy: float, r: float) -> Disk:
        return cls(Point(float(cx), float(cy)), float(r))

    @property
    def cx(self) -> float:
        return self.center.x

    @property
    def cy(self) -> float:
        return self.center.y

    def as_dict(self) -> dict[str, float]:
        return {"cx": self.center.x, "cy": self.center.y, "r": self.radius}


@dataclass(frozen=True)
class Tolerance:
    eps_incidence: float = 1e-9
    eps_empty: float = 1e-9
    eps_disjoint: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("eps_incidence", "eps_empty", "eps_disjoint"):
            v = getattr(self, name)
            if not (0 < v < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {v}")

    @classmethod
    def from_env(cls, **overrides: float | None) -> Tolerance:
        """Defaults, then ``BUBBLELAB_EPS``, then explicit non-None overrides."""
        base: dict[str, float] = {}
        env = os.environ.get(EPS_ENV_VAR)
        if env:
            eps = float(env)
            base = {"eps_incidence": eps, "eps_empty": eps, "eps_disjoint": eps}
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)

    def as_dict(self) -> dict[str, float]:
        return {
            "eps_incidence": self.eps_incidence,
            "eps_empty": self.eps_empty,
            "eps_disjoint": self.eps_disjoint,
        }


DEFAULT_TOL = Tolerance()


class PointClass(enum.Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


class DiskRelation(enum.Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    OVERLAPPING = "overlapping"


class PointSet:
    """An ordered planar point set with optional per-point labels.

    ``meta`` records how the set was generated (``{"structure": "gadget",
    "n": 174}`` and so on); construction-aware checks read it.
    """

    def __init__(
        self,
        points: Iterable[Sequence[float]] | np.ndarray,
        labels: Sequence[Any] | None = None,
        meta: dict[str, Any] | None = None,
    ) -> None:
        coords = np.asarray(
            [tuple(p) for p in points] if not isinstance(points, np.ndarray) else points,
            dtype=float,
        ).reshape(-1, 2)
        if not np.all(np.isfinite(coords)):
            raise ValueError("point coordinates must be finite")
        if len(coords) > 1:
            pairs = cKDTree(coords).query_pairs(MIN_SEPARATION)
            if pairs:
                i, j = min(pairs)
                raise ValueError(f"duplicate points {i} and {j} at {tuple(coords[i])}")
        if labels is not None:
            labels = tuple(tuple(l) if isinstance(l, list) else l for l in labels)
            if len(labels) != len(coords):
                raise ValueError("labels must match the number of points")
        coords.setflags(write=False)
        self.coords = coords
        self.labels = labels
        self.meta: dict[str, Any] = dict(meta or {})

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Point:
        x, y = self.coords[i]
        return Point(float(x), float(y))

    def __iter__(self) -> Iterator[Point]:
        return (self[i] for i in range(len(self)))

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)}, meta={self.meta!r})"

    def diameter(self) -> float:
        if len(self) < 2:
            return 0.0
        lo, hi = self.coords.min(axis=0), self.coords.max(axis=0)
        return float(np.hypot(*(hi - lo)))

    # -- serialization -------------------------------------------------
    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"points": self.coords.tolist()}
        if self.labels is not None:
            out["labels"] = [list(l) if isinstance(l, tuple) else l for l in self.labels]
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> PointSet:
        return cls(data["points"], data.get("labels"), data.get("meta"))

    def to_text(self) -> str:
        lines = [f"# {len(self)} points"]
        lines += [f"{x!r} {y!r}" for x, y in self.coords.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PointSet:
        pts = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'x y', got {raw!r}")
            pts.append((float(parts[0]), float(parts[1])))
        return cls(pts)

    @classmethod
    def read(cls, path: str | os.PathLike[str]) -> PointSet:
        text = Path(path).read_text()
        if text.lstrip().startswith("{"):
            return cls.from_json_dict(json.loads(text))
        return cls.from_text(text)


# -- primitives --------------------------------------------------------------

def triangle_area(a: Point, b: Point, c: Point) -> float:
    """Signed area, positive for counter-clockwise ``a, b, c``."""
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def circumradius_abc(a: Point, b: Point, c: Point) -> float:
    """Circumradius from side lengths, ``abc / (4S)``."""
    s = abs(triangle_area(a, b, c))
    if s == 0.0:
        raise CollinearInput("zero-area triangle")
    return a.dist(b) * b.dist(c) * c.dist(a) / (4.0 * s)


def circumcircle(a: Point, b: Point, c: Point, rel_area_eps: float = 1e-12) -> Disk:
    """Circle through three points, from the perpendicular-bisector system.

    Coordinates are taken relative to ``a`` so that the 2x2 solve is well
    scaled. Raises :class:`CollinearInput` when the area is below
    ``rel_area_eps`` times the squared longest side.
    """
    bx, by = b.x - a.x, b.y - a.y
    cx, cy = c.x - a.x, c.y - a.y
    det = 2.0 * (bx * cy - by * cx)
    longest2 = max(bx * bx + by * by, cx * cx + cy * cy, (b.x - c.x) ** 2 + (b.y - c.y) ** 2)
    if longest2 == 0.0 or abs(det) <= 4.0 * rel_area_eps * longest2:
        raise CollinearInput(f"points {a}, {b}, {c} are (nearly) collinear")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / det
    uy = (bx * c2 - cx * b2) / det
    return Disk(Point(a.x + ux, a.y + uy), math.hypot(ux, uy))


def classify_point(d: Disk, p: Point, tol: Tolerance = DEFAULT_TOL) -> PointClass:
    dist = math.hypot(p.x - d.center.x, p.y - d.center.y)
    if abs(dist - d.radius) <= tol.eps_incidence:
        return PointClass.ON_BOUNDARY
    if dist < d.radius:
        return PointClass.INSIDE
    return PointClass.OUTSIDE


def boundary_gaps(d: Disk, coords: np.ndarray) -> np.ndarray:
    """Signed ``|p - center| - radius`` for every row of ``coords``."""
    return np.hypot(coords[:, 0] - d.center.x, coords[:, 1] - d.center.y) - d.radius


def inside_indices(d: Disk, ps: PointSet, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Indices of points strictly inside ``d`` (beyond ``eps_empty``)."""
    return np.flatnonzero(boundary_gaps(d, ps.coords) < -tol.eps_empty)


def is_empty(d: Disk, ps: PointSet, tol: Tolerance = DEFAULT_TOL) -> bool:
    return inside_indices(d, ps, tol).size == 0


def disk_slack(d1: Disk, d2: Disk) -> float:
    """Center distance minus the sum of radii; negative means overlap."""
    return math.hypot(d1.cx - d2.cx, d1.cy - d2.cy) - (d1.radius + d2.radius)


def disks_disjoint(d1: Disk, d2: Disk, tol: Tolerance = DEFAULT_TOL) -> DiskRelation:
    slack = disk_slack(d1, d2)
    if slack < -tol.eps_disjoint:
        return DiskRelation.OVERLAPPING
    if slack <= tol.eps_disjoint:
        return DiskRelation.TANGENT
    return DiskRelation.DISJOINT


def xi(d: Disk, line_y: float) -> float:
    """Where the horizontal line ``y = line_y`` meets the vertical diameter of ``d``."""
    if abs(line_y - d.center.y) > d.radius:
        raise NoIntersection(f"line y={line_y} misses disk centered at {d.center} (r={d.radius})")
    return d.center.x


def as_point(p: Point | Sequence[float]) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


__all__ = [
    "DEFAULT_TOL",
    "Disk",
    "DiskRelation",
    "Point",
    "PointClass",
    "PointSet",
    "Tolerance",
    "as_point",
    "boundary_gaps",
    "circumcircle",
    "circumradius_abc",
    "classify_point",
    "disk_slack",
    "disks_disjoint",
    "inside_indices",
    "is_empty",
    "triangle_area",
    "xi",
]
