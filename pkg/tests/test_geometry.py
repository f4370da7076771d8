from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bubblelab.constructions import gadget
from bubblelab.errors import CollinearInput, NoIntersection
from bubblelab.geometry import (
    Disk,
    DiskRelation,
    Point,
    PointClass,
    PointSet,
    Tolerance,
    circumcircle,
    circumradius_abc,
    classify_point,
    disks_disjoint,
    is_empty,
    triangle_area,
    xi,
)

coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
points = st.builds(Point, coord, coord)


def _well_shaped(a: Point, b: Point, c: Point) -> bool:
    sides = [a.dist(b), b.dist(c), c.dist(a)]
    return min(sides) > 1e-3 and abs(triangle_area(a, b, c)) > 1e-3 * max(sides) ** 2


# -- circumcircle -------------------------------------------------------------

def test_circumcircle_right_triangle():
    d = circumcircle(Point(0, 0), Point(1, 0), Point(0, 1))
    assert d.cx == pytest.approx(0.5, abs=1e-15)
    assert d.cy == pytest.approx(0.5, abs=1e-15)
    assert d.radius == pytest.approx(math.sqrt(2) / 2, rel=1e-15)


def test_circumcircle_isoceles():
    d = circumcircle(Point(0, 0), Point(2, 0), Point(1, 1))
    assert (d.cx, d.cy, d.radius) == pytest.approx((1.0, 0.0, 1.0), abs=1e-15)


def test_circumcircle_raised_midpoint_has_radius_delta():
    delta = 1 / 29
    h = (1 - math.sqrt(3) / 2) * delta
    d = circumcircle(Point(0, 0), Point(delta, 0), Point(delta / 2, h))
    assert abs(d.radius - delta) <= 1e-12


def test_circumcircle_rejects_collinear():
    with pytest.raises(CollinearInput):
        circumcircle(Point(0, 0), Point(1, 1), Point(2, 2))


@settings(max_examples=400, deadline=None)
@given(points, points, points)
def test_circumcircle_passes_through_inputs(a, b, c):
    assume(_well_shaped(a, b, c))
    d = circumcircle(a, b, c)
    tol = Tolerance()
    for p in (a, b, c):
        # incidence scaled to the size of the circle
        assert abs(p.dist(d.center) - d.radius) <= tol.eps_incidence * max(1.0, d.radius)


def test_circumcircle_matches_abc_over_4s_on_random_triples():
    rng = np.random.default_rng(11)
    checked = 0
    for a, b, c in rng.uniform(-10, 10, (10_000, 3, 2)):
        pa, pb, pc = Point(*a), Point(*b), Point(*c)
        if not _well_shaped(pa, pb, pc):
            continue
        d = circumcircle(pa, pb, pc)
        assert d.radius == pytest.approx(circumradius_abc(pa, pb, pc), rel=1e-12)
        for p in (pa, pb, pc):
            assert abs(p.dist(d.center) - d.radius) <= 1e-9
        checked += 1
    assert checked > 9000


# -- classification -----------------------------------------------------------

UNIT = Disk.from_xyr(0, 0, 1)


@pytest.mark.parametrize(
    "p, expected",
    [
        (Point(1, 0), PointClass.ON_BOUNDARY),
        (Point(0, 0), PointClass.INSIDE),
        (Point(1 + 1e-6, 0), PointClass.OUTSIDE),
    ],
)
def test_classify_point_examples(p, expected):
    assert classify_point(UNIT, p, Tolerance(eps_incidence=1e-9)) is expected


@given(points, st.floats(0.01, 50))
def test_classify_point_consistent_with_distance(p, r):
    d = Disk.from_xyr(0.0, 0.0, r)
    dist = math.hypot(p.x, p.y)
    cls = classify_point(d, p)
    if cls is PointClass.INSIDE:
        assert dist < r
    elif cls is PointClass.OUTSIDE:
        assert dist > r


def test_is_empty_examples():
    delta = 1 / 60
    ps = PointSet([(0, 0), (delta, 0), (2 * delta, 0)])
    assert is_empty(Disk.from_xyr(delta / 2, 0, delta / 2), ps)

    g = gadget(12)
    assert not is_empty(Disk.from_xyr(0, 0, 1), g)
    q = [g[i] for i in (1, 2, 3)]
    through_three = circumcircle(*q)
    assert through_three.radius == pytest.approx(1.0, rel=1e-12)
    assert not is_empty(through_three, g)


# -- disjointness -------------------------------------------------------------

def test_disks_disjoint_examples():
    assert disks_disjoint(UNIT, Disk.from_xyr(2, 0, 1)) is DiskRelation.TANGENT
    assert disks_disjoint(UNIT, Disk.from_xyr(3, 0, 1)) is DiskRelation.DISJOINT
    assert disks_disjoint(UNIT, Disk.from_xyr(1, 0, 1)) is DiskRelation.OVERLAPPING


disks = st.builds(Disk.from_xyr, coord, coord, st.floats(0.01, 50))


@given(disks, disks)
def test_disks_disjoint_symmetric(d1, d2):
    assert disks_disjoint(d1, d2) is disks_disjoint(d2, d1)


# -- xi -----------------------------------------------------------------------

def test_xi_examples():
    assert xi(Disk.from_xyr(3, 1, 2), 0.0) == 3
    assert xi(UNIT, 1.0) == 0
    with pytest.raises(NoIntersection):
        xi(UNIT, 2.0)


@given(disks, st.floats(-1, 1), st.floats(-1000, 1000))
def test_xi_translation_invariant(d, frac, shift):
    y = d.cy + frac * d.radius
    moved = Disk.from_xyr(d.cx, d.cy + shift, d.radius)
    assume(abs(y + shift - moved.cy) <= moved.radius)
    assert xi(d, y) == xi(moved, y + shift) == d.cx


# -- point sets and tolerances ------------------------------------------------

def test_pointset_rejects_duplicates_and_nonfinite():
    with pytest.raises(ValueError):
        PointSet([(0, 0), (1, 1), (0, 5e-13)])
    with pytest.raises(ValueError):
        PointSet([(0, float("nan"))])
    with pytest.raises(ValueError):
        Point(float("inf"), 0)


def test_pointset_round_trips(tmp_path):
    ps = PointSet([(0.1, 0.2), (1 / 3, -2.5)], [[0, 0], [0, 1]], {"structure": "none"})
    back = PointSet.from_json_dict(json.loads(json.dumps(ps.to_json_dict())))
    assert np.array_equal(back.coords, ps.coords)
    assert back.labels == ps.labels and back.meta == ps.meta

    path = tmp_path / "pts.txt"
    path.write_text("# comment\n0.1 0.2\n\n0.3333333333333333 -2.5  # trailing\n")
    txt = PointSet.read(path)
    assert txt.coords.tolist() == [[0.1, 0.2], [1 / 3, -2.5]]
    assert np.array_equal(PointSet.from_text(ps.to_text()).coords, ps.coords)


def test_tolerance_bounds_and_env(monkeypatch):
    with pytest.raises(ValueError):
        Tolerance(eps_empty=0.0)
    with pytest.raises(ValueError):
        Tolerance(eps_disjoint=1e-3)
    monkeypatch.setenv("BUBBLELAB_EPS", "1e-7")
    t = Tolerance.from_env()
    assert t.eps_incidence == t.eps_empty == t.eps_disjoint == 1e-7
    assert Tolerance.from_env(eps_empty=1e-6).eps_empty == 1e-6
