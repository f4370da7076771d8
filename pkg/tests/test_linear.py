from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bubblelab.errors import DomainError
from bubblelab.geometry import DiskRelation, Point, circumradius_abc, disks_disjoint
from bubblelab.linear import (
    LEMMA2_CONSTANT,
    QUADRATIC,
    SANDWICH_PAIRS,
    e11_residual,
    g,
    g_increasing,
    lemma1_check,
    lemma2_check,
    lemma2_depth,
    lemma4_closed_form,
    lemma4_disks,
    lemma4_numeric,
    lemma4_system,
    sandwich_table,
)


# -- three tangent circles ------------------------------------------------------

def test_closed_form_value():
    sol = lemma4_closed_form()
    assert str(sol.x).startswith("0.03486")
    assert sol.lam == pytest.approx(4 / 945 * (7 - 4 * math.sqrt(3)), rel=1e-15)
    a, b, c = QUADRATIC
    assert abs(a * sol.lam**2 + b * sol.lam + c) / c < 1e-12
    assert abs(e11_residual(sol.z)) < 1e-12
    assert sol.max_residual < 1e-9


def test_larger_root_is_rejected():
    sol = lemma4_closed_form()
    big = math.sqrt(4 / 945 * (7 + 4 * math.sqrt(3)))
    assert big > 2 / 63
    assert sol.details["rejected_z"] == pytest.approx(big)
    assert 0 < sol.z < 2 / 63


def test_newton_agrees_with_closed_form():
    closed, newton = lemma4_closed_form(), lemma4_numeric()
    assert np.max(np.abs(closed.unknowns - newton.unknowns)) < 1e-10
    assert newton.max_residual < 1e-9
    assert newton.y1 > newton.y2 > 0


def test_newton_from_other_start():
    sol = lemma4_numeric(start=(0.05, 0.05, 0.02, 0.03, 0.01))
    assert abs(sol.x - lemma4_closed_form().x) < 1e-10


def test_solution_is_geometrically_tangent():
    sol = lemma4_closed_form()
    c, c1, c2 = lemma4_disks(sol)
    assert c.center.dist(c1.center) == pytest.approx(c.radius + c1.radius, abs=1e-10)
    assert c.center.dist(c2.center) == pytest.approx(c.radius + c2.radius, abs=1e-10)
    assert c1.center.dist(c2.center) == pytest.approx(c1.radius + c2.radius, abs=1e-10)
    # the small disks pass through the grid points at 3x/2 and 7x/2
    assert c1.center.dist(Point(1.5 * sol.x, 0.0)) == pytest.approx(c1.radius, abs=1e-12)
    assert c2.center.dist(Point(3.5 * sol.x, 0.0)) == pytest.approx(c2.radius, abs=1e-12)


def test_system_vanishes_only_at_solution():
    sol = lemma4_closed_form()
    assert np.linalg.norm(lemma4_system(sol.unknowns * 1.01)) > 1e-6


# -- chord depths -----------------------------------------------------------------

def test_g_examples():
    assert g(0, 0.3) == 0
    d = 1 / 29
    assert g(3, d) + g(6, d) <= 0.9 * d
    d = 1 / 60
    val = g(4, d)
    assert val == pytest.approx(16 * d * d / (1 + math.sqrt(1 - 16 * d * d)), rel=1e-15)
    assert val / d == pytest.approx(0.13348, abs=1e-5)
    assert val / d <= LEMMA2_CONSTANT
    with pytest.raises(DomainError):
        g(6, 1 / 6)


@given(st.integers(0, 6), st.floats(1e-6, 0.16))
def test_g_is_chord_depth(a, delta):
    w = a * delta
    assert g(a, delta) == pytest.approx(1 - math.sqrt(1 - w * w), rel=1e-9, abs=1e-15)


def test_sandwich_table_at_refined_spacing():
    table = sandwich_table(1 / 29)
    assert [(c.a1, c.a2) for c in table] == [(a, b) for a, b, _ in SANDWICH_PAIRS]
    assert all(c.passed for c in table)
    assert all(c.bound == pytest.approx(0.9 / 29) for c in table)


def test_sandwich_table_above_range_is_evaluated():
    table = sandwich_table(0.05)
    worst = next(c for c in table if (c.a1, c.a2) == (6, 3))
    assert worst.lhs == pytest.approx(g(6, 0.05) + g(3, 0.05))
    assert worst.passed == (worst.lhs <= 0.045)


def test_sandwich_bound_on_sampled_spacings():
    for delta in np.linspace(1e-4, 1 / 29, 100):
        assert g(3, delta) + g(6, delta) <= 0.9 * delta
        assert g_increasing(delta)


# -- flat-disk lemmas ---------------------------------------------------------------

@pytest.mark.parametrize("delta", [1 / 60, 1 / 29, 1.0])
def test_lemma1(delta):
    rep = lemma1_check(delta)
    assert rep.passed
    assert abs(rep.left.radius - delta) <= 1e-12 * max(1, delta)
    assert abs(rep.right.radius - delta) <= 1e-12 * max(1, delta)
    assert rep.relation is DiskRelation.TANGENT
    assert disks_disjoint(rep.left, rep.right) is DiskRelation.TANGENT
    assert rep.tangency_error < 1e-12
    h = (1 - math.sqrt(3) / 2) * delta
    abc = circumradius_abc(Point(0, 0), Point(delta, 0), Point(delta / 2, h))
    assert abc == pytest.approx(delta, rel=1e-12)


def test_lemma2_constants():
    rep = lemma2_check(1 / 60)
    assert rep.passed
    assert rep.depth_over_delta == pytest.approx(0.13348, abs=1e-5)
    assert rep.depth <= 8.02 * (1 / 60) ** 2
    assert 1 - math.sqrt(3) / 2 == pytest.approx(0.13397, abs=1e-5)
    assert rep.depth_over_delta < 1 - math.sqrt(3) / 2


def test_lemma2_depth_flat_limit_and_errors():
    assert lemma2_depth(1e6, 1 / 60, 4) < 1e-6
    assert lemma2_depth(1e12, 1 / 60, 4) < 1e-10
    with pytest.raises(DomainError):
        lemma2_depth(0.01, 1 / 60, 4)


@pytest.mark.parametrize("s", [0.5, 2.0, 10.0])
def test_lemma2_depth_scale_covariant(s):
    base = lemma2_depth(1.0, 1 / 60, 4)
    assert lemma2_depth(s, s / 60, 4) == pytest.approx(s * base, abs=1e-12)
