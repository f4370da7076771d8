from __future__ import annotations

from fractions import Fraction

import pytest

from bubblelab.bubbles import BubbleSet, disjoint_bubbles
from bubblelab.constructions import LinearSpec, linear_grid
from bubblelab.counting import (
    THREE_LINE_CASES,
    LargeDiskGraph,
    PathRow,
    counting_bounds,
    large_disk_graph,
    path_rows,
)
from bubblelab.geometry import Disk


def test_three_line_cases_hold():
    assert [(c.points, c.disks) for c in THREE_LINE_CASES] == [(1, 1), (4, 3), (5, 3), (7, 5), (8, 5)]
    for c in THREE_LINE_CASES:
        assert c.holds
        # disks >= (m + 1) / 2 checked with integers
        assert 2 * c.disks >= c.points + 1


def test_path_rows_arithmetic():
    for row in path_rows(100):
        assert row.disks == 5 * row.i - 4
        assert 2 * row.halved == 8 * row.i - 4
        assert row.holds == (5 * row.i - 4 >= 4 * row.i - 2)
    assert [r.i for r in path_rows(100) if not r.holds] == [1]
    assert [r.i for r in path_rows(100) if r.equality] == [2]
    assert PathRow(3).halved == Fraction(10)


def test_prelim_bounds():
    rep = counting_bounds(1)
    assert rep.n == 486
    assert rep.bound == Fraction(487, 2) and rep.bound_floor == 243
    assert rep.denominator == 966 and rep.unresolved_slack == "-O(1)"
    assert rep.local_ok
    with pytest.raises(ValueError):
        counting_bounds(1, k=2)


def test_refined_bounds():
    rep = counting_bounds(2, 2, "refined_grid")
    assert rep.n == 711 == len(linear_grid(LinearSpec(2, 1 / 29, k=2)))
    assert rep.bound == Fraction(713, 2)
    d = rep.as_dict()
    assert d["denominator"] == "236"
    assert d["asymptotic_form"] == "n/2 + n/236 -O(k)"
    assert d["paths_failing"] == [1] and d["paths_equality"] == [2]


def test_bounds_argument_checks():
    with pytest.raises(ValueError):
        counting_bounds(0)
    with pytest.raises(ValueError):
        counting_bounds(1, scheme="alternating")


def test_large_disk_graph_by_hand():
    ps = linear_grid(LinearSpec(1, 1 / 29, k=1))
    top = 4.0  # line l1
    x0, x1 = float(ps.coords[0, 0]), float(ps.coords[3, 0])
    big_a = Disk.from_xyr(x0, top + 2.0, 2.0)
    big_b = Disk.from_xyr(x1, top + 2.0, 2.0)
    small = Disk.from_xyr(0.5, top + 0.01, 0.01)
    g = large_disk_graph(ps, BubbleSet([big_a, big_b, small]))
    assert g.vertices == [0, 1]
    assert g.edges == [(0, 1)]
    assert g.components() == [[0, 1]]
    far = Disk.from_xyr(float(ps.coords[100, 0]), top + 2.0, 2.0)
    g = large_disk_graph(ps, BubbleSet([big_a, far]))
    assert g.edges == [] and g.components() == [[0], [1]]


def test_large_disk_graph_on_solver_output():
    ps = linear_grid(LinearSpec(1, 1 / 29, k=2))
    res = disjoint_bubbles(ps)
    g = large_disk_graph(ps, res.bubble)
    assert all(res.bubble.disks[v].radius >= 1 - 1e-9 for v in g.vertices)
    assert sum(len(c) for c in g.components()) == len(g.vertices)
    assert isinstance(g, LargeDiskGraph)
