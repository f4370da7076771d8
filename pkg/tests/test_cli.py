from __future__ import annotations

import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
import pytest

from bubblelab.cli import run
from bubblelab.figures import KINDS, FigureSpec, figure
from bubblelab.reports import VerificationReport, dumps, plain


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _json(capsys, *argv):
    code, out, err = _run(capsys, *argv, "--json")
    return code, json.loads(out), err


# -- reports ---------------------------------------------------------------------

def test_dumps_is_stable_and_parseable():
    class Color(Enum):
        RED = "red"

    @dataclass
    class Thing:
        a: float
        b: Color

    obj = {"x": 0.1, "inf": float("inf"), "f": Fraction(1, 3), "arr": np.arange(3), "t": Thing(1.0, Color.RED)}
    text = dumps(obj)
    data = json.loads(text)
    assert data == {"x": 0.1, "inf": "inf", "f": "1/3", "arr": [0, 1, 2], "t": {"a": 1.0, "b": "red"}}
    assert "0.10000000000000001" in text
    assert dumps(obj) == text
    assert plain(np.float64(2.5)) == 2.5


def test_report_overall():
    rep = VerificationReport("x", {}, "claim")
    assert not rep.overall
    rep.add("a", 1, True)
    assert rep.overall and rep.as_dict()["overall"] == "pass"
    rep.add("b", 2, False, -1.0, "note")
    assert rep.as_dict()["overall"] == "fail"
    assert rep.as_dict()["results"][1]["note"] == "note"


# -- verify ------------------------------------------------------------------------

def test_verify_circular(capsys):
    code, data, _ = _json(capsys, "verify", "circular", "--n", "174", "--case", "2")
    assert code == 0 and data["overall"] == "pass"
    case = data["details"]["cases"][0]
    assert case["margin"] > 0
    assert case["o1o2"] == pytest.approx(0.0997, abs=1e-4)
    assert "tolerance" in data["inputs"] or "tolerance" in data["details"]


def test_verify_circular_table(capsys):
    code, out, _ = _run(capsys, "verify", "circular")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["name", "value", "passed", "margin"]
    assert any(line.startswith("overall\t") for line in lines)


def test_verify_circular_bad_n(capsys):
    code, out, err = _run(capsys, "verify", "circular", "--n", "8", "--json")
    assert code == 1
    assert json.loads(out)["overall"] == "fail"
    assert json.loads(err.splitlines()[-1])["error"]


def test_verify_circular_scan(capsys):
    code, data, _ = _json(capsys, "verify", "circular", "--scan", "174:300")
    assert code == 0 and data["overall"] == "pass"


def test_verify_line_and_lemmas(capsys):
    for argv in (
        ["verify", "line", "--k", "340"],
        ["verify", "line", "--k", "340", "--subcase", "ii"],
        ["verify", "lemma4"],
        ["verify", "sandwich"],
        ["verify", "lemma1", "--delta", "1/60", "--delta", "1/29"],
    ):
        code, data, _ = _json(capsys, *argv)
        assert code == 0, argv
        assert data["overall"] == "pass"
        assert data["claim"]


def test_verify_sandwich_outside_range_still_reports(capsys):
    code, data, _ = _json(capsys, "verify", "sandwich", "--delta", "0.05")
    assert code in (0, 1)
    assert data["results"]


# -- construct / bubbles / solve ---------------------------------------------------------

def test_construct_solve_round_trip(tmp_path, capsys):
    pts = tmp_path / "g.json"
    code, _, _ = _run(capsys, "construct", "gadget", "--n", "174", "--out", str(pts))
    assert code == 0
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert _run(capsys, "solve", "--in", str(pts), "--seed", "3", "--out", str(out1))[0] == 0
    assert _run(capsys, "solve", "--in", str(pts), "--seed", "3", "--out", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text())
    assert data["lower"] == 88 and data["upper"] >= 88
    assert data["validation"]["passed"]


def test_construct_text_and_bubbles(tmp_path, capsys):
    pts = tmp_path / "line.txt"
    assert _run(capsys, "construct", "collinear", "--n", "11", "--out", str(pts))[0] == 0
    assert len(pts.read_text().split("\n")) >= 11
    code, data, _ = _json(capsys, "bubbles", "--in", str(pts))
    assert code == 0 and data["disks"] == 6 and data["validation"]["passed"]


def test_construct_spec_and_padding(capsys):
    code, out, _ = _run(capsys, "construct", "grid", "--spec", '{"j": 1, "delta": "1/60"}', "--pad-to", "500")
    assert code == 0
    assert len(json.loads(out)["points"]) == 500


def test_lower_command(tmp_path, capsys):
    pts = tmp_path / "c.json"
    _run(capsys, "construct", "chain", "--m", "1", "--out", str(pts))
    code, data, _ = _json(capsys, "lower", "--in", str(pts))
    assert code == 0 and data["value"] == 259
    code, _, err = _run(capsys, "lower", "--in", str(pts), "--structure", "gadget")
    assert code == 2 and json.loads(err)["error"] == "StructureMismatch"


def test_counts(capsys):
    expected = {"prelim_linear": "966", "refined_grid": "236", "alternating": "257"}
    for scheme, den in expected.items():
        code, data, _ = _json(capsys, "counts", "--scheme", scheme)
        assert code == 0 and data["denominator"] == den
    code, data, _ = _json(capsys, "counts", "--scheme", "refined_grid", "--j", "2", "--k", "2")
    assert data["bounds"]["n"] == 711


def test_env_and_flag_tolerances(tmp_path, capsys, monkeypatch):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n1 0\n0 1\n")
    monkeypatch.setenv("BUBBLELAB_EPS", "1e-8")
    code, data, _ = _json(capsys, "solve", "--in", str(pts))
    assert code == 0 and data["tolerance"]["eps_empty"] == 1e-8
    code, data, _ = _json(capsys, "solve", "--in", str(pts), "--eps-empty", "1e-6")
    assert data["tolerance"]["eps_empty"] == 1e-6
    code, _, err = _run(capsys, "solve", "--in", str(pts), "--eps-empty", "0")
    assert code == 1 and json.loads(err)["error"]


# -- error handling ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [[], ["verify"], ["verify", "circular", "--n", "abc"], ["solve"], ["counts", "--scheme", "nope"]],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert json.loads(err)["error"] == "usage"


def test_missing_and_malformed_input(tmp_path, capsys):
    code, _, err = _run(capsys, "solve", "--in", str(tmp_path / "missing.txt"))
    assert code == 1 and json.loads(err)["error"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "solve", "--in", str(bad))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bubblelab", "counts", "--scheme", "alternating", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["denominator"] == "257"


# -- figures ------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "kind, params",
    [
        ("gadget", {"n": 12}),
        ("chain", {"m": 1}),
        ("linear", {"j": 1}),
        ("case_realization", {"n": 174, "case": "case2"}),
        ("path_in_G", {"j": 1, "k": 2}),
    ],
)
def test_figures_are_deterministic_svg(kind, params):
    assert kind in KINDS
    a = figure(FigureSpec(kind, params))
    b = figure(FigureSpec(kind, params))
    assert a == b
    root = ET.fromstring(a.encode())
    assert root.tag.endswith("svg")


def test_figure_spec_validation():
    with pytest.raises(ValueError):
        FigureSpec("histogram")
    with pytest.raises(ValueError):
        FigureSpec("gadget", width=0)


def test_figure_command_and_figures_flag(tmp_path, capsys):
    out = tmp_path / "g.svg"
    assert _run(capsys, "figure", "--kind", "gadget", "--n", "12", "--out", str(out))[0] == 0
    ET.parse(out)
    figdir = tmp_path / "figs"
    code, _, _ = _run(capsys, "verify", "circular", "--figures", str(figdir))
    assert code == 0
    svgs = list(figdir.glob("*.svg"))
    assert svgs
    for p in svgs:
        ET.parse(p)
