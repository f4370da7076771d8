"""Delaunay triangulation by sweep-hull insertion followed by Lawson flips.

The orientation and in-circle tests are evaluated in floating point and, when
the result falls inside the forward error bound, recomputed exactly on the
rational values of the input doubles. Exact signs make the flip loop
terminate; co-circular ties are left unflipped, so any valid triangulation of
a degenerate input may come out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import DEFAULT_TOL, PointSet, Tolerance

_EPS = np.finfo(float).eps / 2
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS

Pt = Sequence[float]


def _as_ints(*xs: float) -> list[int]:
    """The doubles ``xs`` as integers over one common power-of-two denominator.

    Every double is ``num / 2**e``; scaling all of them by the largest
    denominator keeps the values exact, and both predicates are homogeneous,
    so their signs are unchanged.
    """
    ratios = [float(x).as_integer_ratio() for x in xs]
    den = max(d for _, d in ratios)
    return [n * (den // d) for n, d in ratios]


def orient2d(a: Pt, b: Pt, c: Pt) -> int:
    """Sign of the signed area of ``a, b, c``: +1 counter-clockwise, -1 clockwise, 0 collinear."""
    l = (a[0] - c[0]) * (b[1] - c[1])
    r = (a[1] - c[1]) * (b[0] - c[0])
    det = l - r
    if abs(det) > _CCW_BOUND * (abs(l) + abs(r)):
        return 1 if det > 0 else -1
    ax, ay, bx, by, cx, cy = _as_ints(a[0], a[1], b[0], b[1], c[0], c[1])
    e = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (e > 0) - (e < 0)


def incircle(a: Pt, b: Pt, c: Pt, d: Pt) -> int:
    """+1 if ``d`` is strictly inside the circle through counter-clockwise ``a, b, c``."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    t1 = bdx * cdy - cdx * bdy
    t2 = cdx * ady - adx * cdy
    t3 = adx * bdy - bdx * ady
    det = alift * t1 + blift * t2 + clift * t3
    perm = (
        (abs(bdx * cdy) + abs(cdx * bdy)) * alift
        + (abs(cdx * ady) + abs(adx * cdy)) * blift
        + (abs(adx * bdy) + abs(bdx * ady)) * clift
    )
    if abs(det) > _ICC_BOUND * perm:
        return 1 if det > 0 else -1
    ax, ay, bx, by, cx, cy, dx, dy = _as_ints(*a, *b, *c, *d)
    adx, ady, bdx, bdy, cdx, cdy = ax - dx, ay - dy, bx - dx, by - dy, cx - dx, cy - dy
    e = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    return (e > 0) - (e < 0)


@dataclass(frozen=True)
class Triangulation:
    vertices: PointSet
    triangles: np.ndarray
    degenerate: bool = False
    #: for an all-collinear input, the vertices in order along the line
    chain: tuple[int, ...] = ()

    @property
    def edges(self) -> list[tuple[int, int]]:
        if self.degenerate:
            return [tuple(sorted(e)) for e in zip(self.chain, self.chain[1:])]
        out = set()
        for a, b, c in self.triangles.tolist():
            out.update({(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))})
        return sorted(out)


def _chain(ps: PointSet, order: list[int]) -> Triangulation:
    return Triangulation(ps, np.zeros((0, 3), dtype=int), True, tuple(order))


def delaunay(ps: PointSet) -> Triangulation:
    pts = [tuple(p) for p in ps.coords.tolist()]
    n = len(pts)
    order = sorted(range(n), key=lambda i: pts[i])
    if n < 3:
        return _chain(ps, order)

    a, b = order[0], order[1]
    k = 2
    while k < n and orient2d(pts[a], pts[b], pts[order[k]]) == 0:
        k += 1
    if k == n:
        return _chain(ps, order)

    opp: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, w: int) -> None:
        opp[(u, v)] = w
        opp[(v, w)] = u
        opp[(w, u)] = v

    def remove(u: int, v: int, w: int) -> None:
        del opp[(u, v)], opp[(v, w)], opp[(w, u)]

    line, c = order[:k], order[k]
    if orient2d(pts[line[0]], pts[line[1]], pts[c]) > 0:
        for u, v in zip(line, line[1:]):
            add(u, v, c)
        hull = line + [c]
    else:
        for u, v in zip(line, line[1:]):
            add(v, u, c)
        hull = line[::-1] + [c]
    # counter-clockwise hull as a doubly linked ring
    nxt = {u: hull[(i + 1) % len(hull)] for i, u in enumerate(hull)}
    prv = {v: u for u, v in nxt.items()}

    def sees(u: int, v: int, p: int) -> bool:
        return orient2d(pts[u], pts[v], pts[p]) < 0

    last = c
    for p in order[k + 1 :]:
        # the previous point is the rightmost so far, so p sees one of its hull edges
        start = last
        if not (sees(start, nxt[start], p) or sees(prv[start], start, p)):
            start = _any_visible(nxt, start, lambda u: sees(u, nxt[u], p))
        right = start
        while sees(right, nxt[right], p):
            add(nxt[right], right, p)
            right = nxt[right]
        left = start
        while sees(prv[left], left, p):
            add(left, prv[left], p)
            left = prv[left]
        nxt[left], prv[p], nxt[p], prv[right] = p, left, right, p
        last = p

    _lawson(pts, opp, add, remove)

    tris = {tuple(_canonical(u, v, w)) for (u, v), w in opp.items()}
    return Triangulation(ps, np.array(sorted(tris), dtype=int).reshape(-1, 3))


def _any_visible(nxt: dict[int, int], start: int, visible) -> int:
    u = start
    while True:
        if visible(u):
            return u
        u = nxt[u]
        if u == start:
            raise RuntimeError("inserted point sees no hull edge")


def _canonical(u: int, v: int, w: int) -> tuple[int, int, int]:
    """Rotate a counter-clockwise triple so the smallest index comes first."""
    m = min(u, v, w)
    if m == u:
        return u, v, w
    if m == v:
        return v, w, u
    return w, u, v


def _lawson(pts, opp, add, remove) -> None:
    stack = [e for e in opp if e[0] < e[1] and (e[1], e[0]) in opp]
    while stack:
        u, v = stack.pop()
        w = opp.get((u, v))
        x = opp.get((v, u))
        if w is None or x is None:
            continue
        if incircle(pts[u], pts[v], pts[w], pts[x]) <= 0:
            continue
        remove(u, v, w)
        remove(v, u, x)
        add(u, x, w)
        add(x, v, w)
        stack.extend([(u, x), (x, v), (v, w), (w, u)])


# -- brute-force audit --------------------------------------------------------

def circumcircles(coords: np.ndarray, triangles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Centers ``(T, 2)`` and radii ``(T,)`` for every triangle."""
    a = coords[triangles[:, 0]]
    b = coords[triangles[:, 1]] - a
    c = coords[triangles[:, 2]] - a
    det = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
    b2 = (b**2).sum(axis=1)
    c2 = (c**2).sum(axis=1)
    ux = (c[:, 1] * b2 - b[:, 1] * c2) / det
    uy = (b[:, 0] * c2 - c[:, 0] * b2) / det
    return a + np.column_stack((ux, uy)), np.hypot(ux, uy)


def audit_empty_circumcircle(
    tri: Triangulation, tol: Tolerance = DEFAULT_TOL, chunk: int = 512
) -> list[tuple[int, int, float]]:
    """Every ``(triangle, point, depth)`` with a point inside a circumcircle.

    A point counts as inside when it is deeper than ``eps_empty`` scaled by
    ``max(1, radius)``; the scaling keeps sliver triangles with huge
    circumcircles from reporting pure rounding noise.
    """
    if tri.degenerate or len(tri.triangles) == 0:
        return []
    coords = tri.vertices.coords
    centers, radii = circumcircles(coords, tri.triangles)
    bad = []
    for s in range(0, len(radii), chunk):
        cc, rr = centers[s : s + chunk], radii[s : s + chunk]
        dist = np.hypot(coords[None, :, 0] - cc[:, None, 0], coords[None, :, 1] - cc[:, None, 1])
        depth = rr[:, None] - dist
        thresh = tol.eps_empty * np.maximum(1.0, rr)[:, None]
        for t, p in zip(*np.nonzero(depth > thresh)):
            bad.append((s + int(t), int(p), float(depth[t, p])))
    return bad


def check_orientation(tri: Triangulation) -> bool:
    pts = tri.vertices.coords.tolist()
    return all(orient2d(pts[a], pts[b], pts[c]) > 0 for a, b, c in tri.triangles.tolist())
