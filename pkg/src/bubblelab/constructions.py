"""Generators for the point-set families: gadgets, gadget chains, line grids.

All generators are deterministic and label every point so that verifiers can
refer to individual points by their role:

* gadgets and chains: ``[gadget_index, i]`` with ``i = 0`` the center point and
  ``i = 1 .. n-1`` the boundary points ``q_1 .. q_{n-1}`` counter-clockwise;
* line grids: ``[line_index, index_on_line]`` with lines numbered ``1 .. 2k+1``
  from the top;
* padding clusters: ``[-1, index_in_cluster]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import TargetTooSmall
from .geometry import Point, PointSet

CHAIN_SMALL = 174
CHAIN_LARGE = 340


@dataclass(frozen=True)
class GadgetSpec:
    n: int
    radius: float = 1.0
    center: Point = field(default_factory=lambda: Point(0.0, 0.0))
    rotation: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 4:
            raise ValueError(f"a gadget needs n >= 4 points, got {self.n}")
        if not self.radius > 0:
            raise ValueError("gadget radius must be positive")


def gadget_coords(spec: GadgetSpec) -> np.ndarray:
    m = spec.n - 1
    ang = spec.rotation + 2.0 * math.pi * np.arange(m) / m
    boundary = np.column_stack(
        (spec.center.x + spec.radius * np.cos(ang), spec.center.y + spec.radius * np.sin(ang))
    )
    return np.vstack(([spec.center.x, spec.center.y], boundary))


def gadget(spec: GadgetSpec | int) -> PointSet:
    """Center point followed by ``n - 1`` equally spaced boundary points.

    Boundary point ``q_1`` sits at angle ``spec.rotation``.
    """
    if isinstance(spec, int):
        spec = GadgetSpec(spec)
    labels = [[0, i] for i in range(spec.n)]
    meta = {
        "structure": "gadget",
        "n": spec.n,
        "radius": spec.radius,
        "center": [spec.center.x, spec.center.y],
        "rotation": spec.rotation,
    }
    return PointSet(gadget_coords(spec), labels, meta)


def baseline_collinear(n: int, spacing: float = 1.0) -> PointSet:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    xs = spacing * np.arange(n, dtype=float)
    return PointSet(
        np.column_stack((xs, np.zeros(n))),
        [[0, i] for i in range(n)],
        {"structure": "collinear", "n": n, "spacing": spacing},
    )


def _max_half_height(n: int) -> float:
    """Largest ``|y|`` over the boundary of a unit gadget with ``q_1`` on the +x axis."""
    m = n - 1
    return float(np.max(np.abs(np.sin(2.0 * math.pi * np.arange(m) / m))))


def sandwich_scale(small: int = CHAIN_SMALL, large: int = CHAIN_LARGE) -> float:
    """Factor applied to the small gadgets so both sizes touch the same two lines."""
    return _max_half_height(large) / _max_half_height(small)


@dataclass(frozen=True)
class ChainSpec:
    m: int
    d: float = 1e4
    #: scale of the 174-gadgets; ``None`` means the exact sandwich factor
    scale: float | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("chain needs m >= 1")
        if not self.d > 8:
            raise ValueError("gadget spacing d must exceed 8 so gadgets do not overlap")
        if self.scale is not None and not (0.5 < self.scale < 2.0):
            raise ValueError("scale must be close to 1")

    @property
    def resolved_scale(self) -> float:
        return sandwich_scale() if self.scale is None else self.scale


def alternating_chain(spec: ChainSpec | int) -> PointSet:
    """``m`` 174-gadgets and ``m`` 340-gadgets alternating along the x-axis.

    Gadget ``g`` is centered at ``(g * d, 0)`` with ``q_1`` on the +x axis, so
    the remaining boundary points are mirror-symmetric about the axis.
    """
    if isinstance(spec, int):
        spec = ChainSpec(spec)
    scale = spec.resolved_scale
    blocks, labels = [], []
    for g in range(2 * spec.m):
        n = CHAIN_SMALL if g % 2 == 0 else CHAIN_LARGE
        radius = scale if n == CHAIN_SMALL else 1.0
        blocks.append(gadget_coords(GadgetSpec(n, radius, Point(g * spec.d, 0.0))))
        labels += [[g, i] for i in range(n)]
    meta = {
        "structure": "chain",
        "m": spec.m,
        "d": spec.d,
        "scale": scale,
        "gadget_sizes": [CHAIN_SMALL, CHAIN_LARGE],
    }
    return PointSet(np.vstack(blocks), labels, meta)


def _steps_per_unit(delta: float | Fraction) -> int:
    """``4 / delta`` as an integer, or ValueError when it is not one."""
    q = 4 / delta if isinstance(delta, Fraction) else 4.0 / float(delta)
    qi = round(q)
    if qi <= 0 or abs(q - qi) > 1e-9 * max(1, qi):
        raise ValueError(f"4/delta must be an integer (delta={delta})")
    return int(qi)


@dataclass(frozen=True)
class LinearSpec:
    j: int
    delta: float = 1 / 60
    epsilon: float | None = None
    k: int = 1

    def __post_init__(self) -> None:
        if self.j < 1 or self.k < 1:
            raise ValueError("j and k must be positive")
        if not 0 < self.delta <= 1 / 29 + 1e-15:
            raise ValueError(f"delta must lie in (0, 1/29], got {self.delta}")
        _steps_per_unit(self.delta)
        if not 0 <= self.shift < self.delta / 100:
            raise ValueError("epsilon must lie in [0, delta/100)")

    @property
    def steps(self) -> int:
        return _steps_per_unit(self.delta)

    @property
    def shift(self) -> float:
        return self.delta / 1000 if self.epsilon is None else self.epsilon


def linear_count(j: int, k: int, delta: float | Fraction) -> int:
    """Closed-form point count of the ``(j, k)`` grid."""
    q = _steps_per_unit(delta)
    return ((k + 1) * (q + 1) + k) * j + (2 * k + 1)


def prelim_count(j: int, delta: float | Fraction) -> int:
    """Point count of the three-line construction, ``(8/delta + 3) j + 3``."""
    q = _steps_per_unit(delta)
    return (2 * q + 3) * j + 3


def line_y(line_index: int, k: int) -> float:
    """Height of line ``l_i``; the top line is ``l_1``, lines are 2 apart."""
    return 2.0 * (2 * k + 1 - line_index)


def linear_grid(spec: LinearSpec) -> PointSet:
    """``k + 1`` dense lines interleaved with ``k`` sparse lines.

    Dense lines (odd index) carry ``(4/delta + 1) j + 1`` points at spacing
    ``delta``; sparse lines carry ``j + 1`` points at spacing ``4 + delta``.
    Lines ``l_3, l_7, l_11, ...`` are shifted right by ``epsilon``.
    """
    q, delta = spec.steps, spec.delta
    blocks, labels = [], []
    for i in range(1, 2 * spec.k + 2):
        y = line_y(i, spec.k)
        if i % 2 == 1:
            count = (q + 1) * spec.j + 1
            xs = np.arange(count) * delta
            if i % 4 == 3:
                xs = xs + spec.shift
        else:
            count = spec.j + 1
            xs = np.arange(count) * (4.0 + delta)
        blocks.append(np.column_stack((xs, np.full(count, y))))
        labels += [[i, t] for t in range(count)]
    meta = {
        "structure": "grid",
        "j": spec.j,
        "k": spec.k,
        "delta": delta,
        "epsilon": spec.shift,
    }
    return PointSet(np.vstack(blocks), labels, meta)


def padded_to(
    n_target: int,
    base: PointSet,
    line_y: float,
    spacing: float,
    offset_x: float,
) -> PointSet:
    """Append a collinear cluster on ``y = line_y`` until ``n_target`` points."""
    extra = n_target - len(base)
    if extra < 0:
        raise TargetTooSmall(f"target {n_target} is below base size {len(base)}")
    if extra == 0:
        return base
    xs = offset_x + spacing * np.arange(extra)
    cluster = np.column_stack((xs, np.full(extra, float(line_y))))
    labels: list[Any] | None = None
    if base.labels is not None:
        labels = list(base.labels) + [[-1, i] for i in range(extra)]
    meta = dict(base.meta)
    meta["padding"] = {"count": extra, "line_y": line_y, "spacing": spacing, "offset_x": offset_x}
    return PointSet(np.vstack((base.coords, cluster)), labels, meta)
