"""SVG figures of the constructions and proof configurations.

Rendering goes through matplotlib's SVG backend with a fixed hash salt and no
date stamp, so identical parameters give byte-identical files.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Any, Callable

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from . import circular  # noqa: E402
from .bubbles import BubbleSet, disjoint_bubbles  # noqa: E402
from .constructions import ChainSpec, LinearSpec, alternating_chain, gadget, line_y, linear_grid  # noqa: E402
from .counting import large_disk_graph  # noqa: E402
from .geometry import Disk, PointSet  # noqa: E402

KINDS = ("gadget", "chain", "linear", "case_realization", "path_in_G")
_RC = {"svg.hashsalt": "bubblelab", "svg.fonttype": "none", "font.size": 9}


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    width: int = 640
    height: int = 480
    annotations: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("figure dimensions must be positive")


def _points(ax, ps: PointSet, size: float = 6.0, **kw) -> None:
    ax.scatter(ps.coords[:, 0], ps.coords[:, 1], s=size, color=kw.pop("color", "black"), zorder=3, **kw)


def _disk(ax, d: Disk, **kw) -> None:
    kw.setdefault("fill", False)
    ax.add_patch(Circle((d.cx, d.cy), d.radius, **kw))


def _bubbles(ax, b: BubbleSet, **kw) -> None:
    for d in b.disks:
        _disk(ax, d, lw=0.6, color=kw.get("color", "tab:blue"))


def _draw_gadget(fig: Figure, spec: FigureSpec) -> None:
    n = int(spec.params.get("n", 12))
    ps = gadget(n)
    ax = fig.add_subplot()
    _disk(ax, Disk.from_xyr(0.0, 0.0, 1.0), ls="--", lw=0.8, color="gray")
    _points(ax, ps, 12)
    if spec.annotations:
        ax.annotate("p", ps.coords[0], xytext=(4, 4), textcoords="offset points")
        ax.annotate("q1", ps.coords[1], xytext=(4, 4), textcoords="offset points")
        ax.set_title(f"{n}-gadget")
    ax.set_xlim(-1.2, 1.2)
    ax.set_ylim(-1.2, 1.2)


def _draw_chain(fig: Figure, spec: FigureSpec) -> None:
    m = int(spec.params.get("m", 2))
    d = float(spec.params.get("d", 3.0))
    ps = alternating_chain(ChainSpec(m, d=max(d, 8.0 + 1e-9)))
    ax = fig.add_subplot()
    _points(ax, ps, 1.5)
    top = float(ps.coords[:, 1].max())
    for y in (top, -top):
        ax.axhline(y, lw=0.6, color="gray", ls="--")
    if spec.annotations:
        ax.set_title(f"alternating chain, m={m}, {len(ps)} points")


def _grid_axes(fig: Figure, ps: PointSet, k: int, annotate: bool):
    ax = fig.add_subplot()
    for i in range(1, 2 * k + 2):
        ax.axhline(line_y(i, k), lw=0.4, color="lightgray", zorder=0)
        if annotate:
            ax.annotate(f"l{i}", (ps.coords[:, 0].max(), line_y(i, k)), xytext=(6, -3), textcoords="offset points")
    _points(ax, ps, 1.5)
    return ax


def _draw_linear(fig: Figure, spec: FigureSpec) -> None:
    p = spec.params
    ls = LinearSpec(int(p.get("j", 2)), float(p.get("delta", 1 / 60)), k=int(p.get("k", 1)))
    ps = linear_grid(ls)
    ax = _grid_axes(fig, ps, ls.k, spec.annotations)
    if p.get("bubbles"):
        _bubbles(ax, disjoint_bubbles(ps, int(p.get("seed", 0))).bubble)
    if spec.annotations:
        ax.set_title(f"line grid j={ls.j} k={ls.k} delta={ls.delta:.4g}, {len(ps)} points")


def _draw_path_in_g(fig: Figure, spec: FigureSpec) -> None:
    p = spec.params
    ls = LinearSpec(int(p.get("j", 2)), float(p.get("delta", 1 / 29)), k=int(p.get("k", 2)))
    ps = linear_grid(ls)
    res = disjoint_bubbles(ps, int(p.get("seed", 0)))
    graph = large_disk_graph(ps, res.bubble)
    ax = _grid_axes(fig, ps, ls.k, spec.annotations)
    _bubbles(ax, res.bubble, color="lightsteelblue")
    for v in graph.vertices:
        _disk(ax, res.bubble.disks[v], lw=1.2, color="tab:red")
    for a, b in graph.edges:
        da, db = res.bubble.disks[a], res.bubble.disks[b]
        ax.plot([da.cx, db.cx], [da.cy, db.cy], color="tab:red", lw=1.0)
    if spec.annotations:
        ax.set_title(f"large disks: {len(graph.vertices)}, edges: {len(graph.edges)}")


def _draw_case(fig: Figure, spec: FigureSpec) -> None:
    n = int(spec.params.get("n", 174))
    case = str(spec.params.get("case", "case2"))
    real = circular.realize_case(n, case)
    full, zoom = fig.subplots(1, 2)
    for ax in (full, zoom):
        if real.obstacle is not None:
            _disk(ax, real.obstacle, lw=0.8, color="gray")
        else:
            ax.axvline(real.line_x, lw=0.8, color="gray")
        for d, col in ((real.q1, "tab:blue"), (real.q2, "tab:orange")):
            _disk(ax, d, fill=True, alpha=0.35, color=col, lw=0)
            _disk(ax, d, lw=0.8, color=col)
        _points(ax, real.points, 4)
        ax.set_aspect("equal")
    full.set_xlim(-1.15, 1.15)
    full.set_ylim(-1.15, 1.15)
    lo_x = min(real.q1.cx - real.q1.radius, real.q2.cx - real.q2.radius)
    hi_x = max(real.q1.cx + real.q1.radius, real.q2.cx + real.q2.radius)
    lo_y = min(real.q1.cy - real.q1.radius, real.q2.cy - real.q2.radius)
    hi_y = max(real.q1.cy + real.q1.radius, real.q2.cy + real.q2.radius)
    pad = 0.15 * max(hi_x - lo_x, hi_y - lo_y)
    zoom.set_xlim(lo_x - pad, hi_x + pad)
    zoom.set_ylim(lo_y - pad, hi_y + pad)
    if spec.annotations:
        rep = real.report
        full.set_title(f"n={n} {case}")
        zoom.set_title(f"margin r1+r2-|o1o2| = {rep.margin:.3e}")


_DRAW: dict[str, Callable[[Figure, FigureSpec], None]] = {
    "gadget": _draw_gadget,
    "chain": _draw_chain,
    "linear": _draw_linear,
    "case_realization": _draw_case,
    "path_in_G": _draw_path_in_g,
}


def figure(spec: FigureSpec) -> str:
    """Render ``spec`` and return the SVG document."""
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(spec.width / 100, spec.height / 100), dpi=100)
        _DRAW[spec.kind](fig, spec)
        for ax in fig.axes:
            ax.set_aspect("equal", adjustable="datalim" if spec.kind in ("chain", "linear", "path_in_G") else "box")
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def render_bubbles(ps: PointSet, bubble: BubbleSet | None, title: str = "", width: int = 640, height: int = 480) -> str:
    """Points and, if given, the disks of a bubble set."""
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(width / 100, height / 100), dpi=100)
        ax = fig.add_subplot()
        _points(ax, ps, 4 if len(ps) < 400 else 1.5)
        if bubble is not None:
            _bubbles(ax, bubble)
        ax.set_aspect("equal", adjustable="datalim")
        ax.autoscale_view()
        if title:
            ax.set_title(title)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
