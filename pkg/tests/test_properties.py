"""Randomized invariants across modules."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from bubblelab.bubbles import bubble_from_matching, certified_lower, disjoint_bubbles, pencil_interval, validate
from bubblelab.circular import RESIDUAL_TOL, TangencyProblem, solve_tangent_pair
from bubblelab.constructions import GadgetSpec, baseline_collinear, gadget
from bubblelab.delaunay import audit_empty_circumcircle, check_orientation, delaunay
from bubblelab.geometry import PointSet, is_empty
from bubblelab.linear import lemma1_check
from bubblelab.matching import maximum_matching

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

point_lists = st.lists(
    st.tuples(st.integers(-200, 200), st.integers(-200, 200)), min_size=3, max_size=120, unique=True
)


def _pointset(raw, scale: float = 0.01) -> PointSet:
    return PointSet([(x * scale, y * scale) for x, y in raw])


@SETTINGS
@given(
    st.integers(87, 2000).map(lambda h: 2 * h),
    st.sampled_from([3.5, 4, 6, 7.5, 8, 10]),
    st.sampled_from(["disk", "line"]),
)
def test_tangent_pair_residuals(n, mult, mode):
    theta = math.pi / (n - 1)
    try:
        sol = solve_tangent_pair(TangencyProblem(theta, mult * theta, mode))
    except ArithmeticError:
        assume(False)
    assert sol.d > 0 and sol.r_i > 0
    assert sol.residual < RESIDUAL_TOL


@SETTINGS
@given(point_lists)
def test_delaunay_audit_on_lattice_sets(raw):
    # lattice coordinates create many cocircular quadruples
    ps = _pointset(raw)
    tri = delaunay(ps)
    if tri.degenerate:
        return
    assert check_orientation(tri)
    assert audit_empty_circumcircle(tri) == []


def test_delaunay_audit_at_500_points():
    rng = np.random.default_rng(500)
    lattice = np.unique(rng.integers(0, 40, (700, 2)), axis=0)[:500] * 1.0
    for ps in (PointSet(rng.uniform(0, 1, (500, 2))), PointSet(lattice)):
        tri = delaunay(ps)
        assert audit_empty_circumcircle(tri) == []


@SETTINGS
@given(point_lists)
def test_matching_witness_is_a_bubble_set(raw):
    ps = _pointset(raw)
    b = bubble_from_matching(ps)
    assert validate(ps, b).passed
    m = maximum_matching(len(ps), delaunay(ps).edges)
    assert len(b) >= len(ps) - m.size


@SETTINGS
@given(point_lists, st.integers(0, 2**31 - 1))
def test_solver_output_valid_and_bounded(raw, seed):
    ps = _pointset(raw)
    res = disjoint_bubbles(ps, seed=seed)
    assert validate(ps, res.bubble, require_disjoint=True).passed
    # lattice sets have cocircular points, so a disk may hold more than two
    assert 1 <= res.upper <= len(ps)
    assert res.upper >= res.lower


@SETTINGS
@given(point_lists, st.data())
def test_pencil_interval_disks_are_empty(raw, data):
    ps = _pointset(raw)
    p, q = data.draw(st.lists(st.integers(0, len(ps) - 1), min_size=2, max_size=2, unique=True))
    iv = pencil_interval(p, q, ps)
    assume(iv is not None)
    for t in np.linspace(max(iv.t_lo, -1e3), min(iv.t_hi, 1e3), 10):
        d = iv.disk(float(t))
        assert is_empty(d, ps)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40))
def test_collinear_solver_is_optimal(n):
    ps = baseline_collinear(n)
    res = disjoint_bubbles(ps)
    assert res.upper == certified_lower(ps).value == math.ceil(n / 2)


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 600), st.floats(0.1, 100), st.floats(-math.pi, math.pi))
def test_gadget_spacing(n, radius, rotation):
    g = gadget(GadgetSpec(n, radius, rotation=rotation))
    b = g.coords[1:]
    step = np.hypot(*(np.roll(b, -1, axis=0) - b).T)
    assert np.allclose(step, 2 * radius * math.sin(math.pi / (n - 1)), rtol=1e-12, atol=1e-12 * radius)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-4, 10))
def test_lemma1_tangent_for_any_spacing(delta):
    rep = lemma1_check(delta)
    assert rep.tangency_error < 1e-12 * max(1.0, delta)
