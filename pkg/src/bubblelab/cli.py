"""Command-line entry point: ``bubblelab <command> [options]``.

Reports go to stdout as tab-separated rows (``--json`` for JSON) and, with
``--out``, to a JSON file. ``--figures DIR`` additionally writes SVG figures
of the checked configuration into ``DIR``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__, circular, linear
from .bubbles import (
    BOUND_SCHEMES,
    EFFORT,
    STRUCTURES,
    bubble_from_matching,
    bound_constants,
    certified_lower,
    disjoint_bubbles,
    validate,
)
from .constructions import (
    ChainSpec,
    GadgetSpec,
    LinearSpec,
    alternating_chain,
    baseline_collinear,
    gadget,
    linear_grid,
    padded_to,
)
from .counting import counting_bounds
from .errors import BubbleLabError, StructureMismatch
from .figures import KINDS, FigureSpec, figure, render_bubbles
from .geometry import DiskRelation, PointSet, Tolerance, disks_disjoint, is_empty
from .reports import VerificationReport, dumps, plain

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _number(text: str) -> float:
    """A float, also accepting fractions such as ``1/29``."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO:HI") from None
    return lo, hi


# -- output -------------------------------------------------------------------

def _cell(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower()
    if isinstance(v, float):
        if v == 0 or not math.isfinite(v):
            return str(v)
        return f"{v:.4f}" if 1e-3 <= abs(v) < 1e6 else f"{v:.4e}"
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    return str(v).replace("\t", " ").replace("\n", " | ")


def _flatten(prefix: str, obj: Any, rows: list[tuple[str, str]]) -> None:
    obj = plain(obj)
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, (list, tuple)) and any(isinstance(plain(x), (dict, list, tuple)) for x in obj):
        if len(obj) > 20:
            rows.append((prefix, f"<{len(obj)} items>"))
        else:
            for i, x in enumerate(obj):
                _flatten(f"{prefix}.{i}", x, rows)
    else:
        rows.append((prefix, _cell(obj)))


def _table(payload: dict[str, Any]) -> str:
    lines = []
    if "results" in payload:
        lines.append("name\tvalue\tpassed\tmargin")
        for r in payload["results"]:
            lines.append(f"{r['name']}\t{_cell(r['value'])}\t{_cell(r['passed'])}\t{_cell(r['margin'])}")
        lines.append(f"overall\t{payload['overall']}\t\t")
        rest = payload.get("details", {})
    else:
        rest = payload
    rows: list[tuple[str, str]] = []
    _flatten("", rest, rows)
    if rows:
        lines.append("key\tvalue")
        lines += [f"{k}\t{v}" for k, v in rows]
    return "\n".join(lines) + "\n"


def _emit(args: argparse.Namespace, payload: dict[str, Any]) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps(payload))
    sys.stdout.write(dumps(payload) if args.json else _table(payload))


def _write_figure(args: argparse.Namespace, name: str, render: Callable[[], str]) -> None:
    # rendering is the slow part, so only do it when asked
    if getattr(args, "figures", None):
        d = Path(args.figures)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(render())


def _tolerance(args: argparse.Namespace) -> Tolerance:
    return Tolerance.from_env(
        eps_incidence=args.eps_incidence, eps_empty=args.eps_empty, eps_disjoint=args.eps_disjoint
    )


# -- construct ----------------------------------------------------------------

def _build(args: argparse.Namespace) -> PointSet:
    p: dict[str, Any] = json.loads(args.spec) if args.spec else {}

    def get(name: str, default: Any) -> Any:
        v = getattr(args, name, None)
        return p.get(name, default) if v is None else v

    kind = args.family
    if kind == "gadget":
        ps = gadget(GadgetSpec(int(get("n", 12)), float(get("radius", 1.0)), rotation=float(get("rotation", 0.0))))
    elif kind == "collinear":
        ps = baseline_collinear(int(get("n", 11)), float(get("spacing", 1.0)))
    elif kind == "chain":
        scale = get("scale", None)
        ps = alternating_chain(ChainSpec(int(get("m", 1)), float(get("d", 1e4)), None if scale is None else float(scale)))
    else:
        eps = get("epsilon", None)
        ps = linear_grid(
            LinearSpec(int(get("j", 1)), float(Fraction(str(get("delta", "1/60")))), None if eps is None else float(eps), int(get("k", 1)))
        )
    target = get("pad_to", None)
    if target is not None:
        top = float(ps.coords[:, 1].max())
        ps = padded_to(int(target), ps, top, 1.0, float(ps.coords[:, 0].max()) + 1e3)
    return ps


def cmd_construct(args: argparse.Namespace) -> int:
    ps = _build(args)
    if args.out:
        out = Path(args.out)
        out.write_text(ps.to_text() if out.suffix == ".txt" else dumps(ps.to_json_dict()))
        summary = {"family": args.family, "n": len(ps), "meta": ps.meta, "written": str(out)}
        sys.stdout.write(dumps(summary) if args.json else _table(summary))
    else:
        sys.stdout.write(dumps(ps.to_json_dict()))
    _write_figure(args, f"{args.family}.svg", lambda: render_bubbles(ps, None, title=f"{args.family}, {len(ps)} points"))
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _case_id(text: str) -> str:
    return {"1": "case1", "2": "case2"}.get(text, text)


def _case_rows(rep: VerificationReport, case: circular.CaseReport, tol: Tolerance, realize: bool) -> None:
    tag = f"{case.mode}:{case.case_id}@{case.n_or_k}"
    rep.add(f"{tag}:margin", case.margin, case.margin > 0, case.margin)
    rep.add(f"{tag}:residual", case.residual, case.residual < circular.RESIDUAL_TOL,
            circular.RESIDUAL_TOL - case.residual)
    rep.details.setdefault("cases", []).append(case.as_dict())
    if not realize:
        return
    real = circular.realize_case(case.n_or_k, case.case_id, case.radius)
    rel = disks_disjoint(real.q1, real.q2, tol)
    agree = (rel is DiskRelation.OVERLAPPING) == (case.margin > 0)
    rep.add(f"{tag}:realized_relation", rel.value, agree)
    dist = real.q1.center.dist(real.q2.center)
    rep.add(f"{tag}:realized_center_distance", dist, abs(dist - case.o1o2) <= 1e-9, 1e-9 - abs(dist - case.o1o2))
    for name, d in (("q1", real.q1), ("q2", real.q2)):
        rep.add(f"{tag}:{name}_empty", is_empty(d, real.points, tol), is_empty(d, real.points, tol))


def _fail_precondition(rep: VerificationReport, exc: Exception) -> None:
    rep.add("precondition", str(exc), False)
    _error(exc)


def cmd_verify_circular(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    if args.scan:
        case_id = _case_id(args.case)
        rep = VerificationReport(
            "verify circular", {"scan": list(args.scan), "case": case_id, "tolerance": tol.as_dict()},
            "two disks tangent to the obstacle overlap for every scanned even n",
        )
        try:
            res = circular.margin_scan("disk", case_id, args.scan)
        except ValueError as exc:
            _fail_precondition(rep, exc)
        else:
            for e in res.entries:
                rep.add(f"n={e.n}", e.margin, e.margin is not None and e.margin > 0, e.margin, e.error or "")
            rep.details.update(threshold=res.threshold, positive_from=res.positive_from, all_positive=res.all_positive)
    else:
        case_id = _case_id(args.case)
        rep = VerificationReport(
            "verify circular", {"n": args.n, "case": case_id, "radius": 1.0, "tolerance": tol.as_dict()},
            "the two disks tangent to the obstacle disk overlap, so a gadget needs one more disk",
        )
        try:
            case = circular.case_report_disk(args.n, case_id)
        except (ValueError, BubbleLabError) as exc:
            _fail_precondition(rep, exc)
        else:
            _case_rows(rep, case, tol, realize=True)
            _write_figure(args, f"case_{case_id}_n{args.n}.svg",
                          lambda: figure(FigureSpec("case_realization", {"n": args.n, "case": case_id})))
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_verify_line(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    subs = ["i", "ii", "iii"] if args.subcase == "all" else [args.subcase]
    rep = VerificationReport(
        "verify line", {"k": args.k, "subcases": subs, "radius": 1.0, "tolerance": tol.as_dict()},
        "the two disks tangent to the obstacle line overlap in every subcase",
    )
    try:
        for s in subs:
            case = circular.case_report_line(args.k, s)
            _case_rows(rep, case, tol, realize=True)
            _write_figure(args, f"line_{s}_k{args.k}.svg",
                          lambda s=s: figure(FigureSpec("case_realization", {"n": args.k, "case": s})))
    except (ValueError, BubbleLabError) as exc:
        _fail_precondition(rep, exc)
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_verify_lemma4(args: argparse.Namespace) -> int:
    rep = VerificationReport(
        "verify lemma4", {"tolerance_agreement": 1e-10, "tolerance_residual": 1e-9},
        "three mutually tangent disks between two lines fit exactly at the computed spacing",
    )
    closed = linear.lemma4_closed_form()
    numeric = linear.lemma4_numeric()
    rep.add("x", closed.x, abs(closed.x - 0.03486) < 1e-5, 1e-5 - abs(closed.x - 0.03486))
    q = closed.details["quadratic_residual_rel"]
    rep.add("quadratic_residual_rel", q, abs(q) < 1e-12, 1e-12 - abs(q))
    diff = float(max(abs(a - b) for a, b in zip(closed.unknowns, numeric.unknowns)))
    rep.add("newton_agreement", diff, diff < 1e-10, 1e-10 - diff)
    worst = max(closed.max_residual, numeric.max_residual)
    rep.add("system_residual", worst, worst < 1e-9, 1e-9 - worst)
    rep.details.update(closed_form=closed, numeric=numeric)
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_verify_sandwich(args: argparse.Namespace) -> int:
    rep = VerificationReport(
        "verify sandwich", {"delta": args.delta, "lemma2_delta": args.lemma2_delta},
        "every pair of sandwich depths fits under 0.9 delta, and the clearance near a dense line stays small",
        details={"preconditions": linear.SANDWICH_PRECONDITIONS},
    )
    try:
        table = linear.sandwich_table(args.delta)
    except (ValueError, BubbleLabError) as exc:
        _fail_precondition(rep, exc)
    else:
        for c in table:
            rep.add(f"g({c.a1})+g({c.a2})", c.lhs, c.passed, c.slack, c.note)
        rep.add("g_increasing", True, linear.g_increasing(args.delta))
    l2 = linear.lemma2_check(args.lemma2_delta)
    rep.add("lemma2_depth_over_delta", l2.depth_over_delta, l2.passed, linear.LEMMA2_CONSTANT - l2.depth_over_delta)
    rep.details["lemma2"] = l2.__dict__
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_verify_lemma1(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    deltas = args.delta or [1 / 60, 1 / 29]
    rep = VerificationReport(
        "verify lemma1", {"deltas": deltas, "tolerance": tol.as_dict()},
        "the circle through two neighbours and the raised midpoint has radius delta; neighbouring ones touch",
    )
    for d in deltas:
        r = linear.lemma1_check(d, tol)
        rep.add(f"delta={d:.6g}:radius_error", r.radius_error, r.radius_error <= 1e-12, 1e-12 - r.radius_error)
        rep.add(f"delta={d:.6g}:relation", r.relation.value, r.relation is DiskRelation.TANGENT)
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.overall else EXIT_FAIL


# -- bubbles / solve ----------------------------------------------------------

def cmd_bubbles(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    ps = PointSet.read(args.input)
    bubble = bubble_from_matching(ps)
    report = validate(ps, bubble, require_disjoint=False, tol=tol)
    payload = {
        "mode": args.mode,
        "n": len(ps),
        "disks": len(bubble),
        "ceil_half": math.ceil(len(ps) / 2),
        "validation": report.as_dict(),
        "tolerance": tol.as_dict(),
        "bubble": bubble.to_json_dict(),
    }
    _emit(args, payload)
    _write_figure(args, "bubbles.svg", lambda: render_bubbles(ps, bubble, title=f"{len(bubble)} disks"))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_solve(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    ps = PointSet.read(args.input)
    res = disjoint_bubbles(ps, args.seed, args.effort, tol, args.structure)
    report = validate(ps, res.bubble, require_disjoint=True, tol=tol)
    payload = res.as_dict()
    payload["validation"] = report.as_dict()
    payload["tolerance"] = tol.as_dict()
    payload["n"] = len(ps)
    _emit(args, payload)
    _write_figure(args, "solve.svg", lambda: render_bubbles(ps, res.bubble, title=f"upper {res.upper}, lower {res.lower}"))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_lower(args: argparse.Namespace) -> int:
    ps = PointSet.read(args.input)
    lb = certified_lower(ps, args.structure)
    _emit(args, lb.as_dict())
    return EXIT_OK


# -- counts / figure ----------------------------------------------------------

def cmd_counts(args: argparse.Namespace) -> int:
    payload: dict[str, Any] = {"scheme": args.scheme, "denominator": bound_constants(args.scheme, args.delta)}
    if args.j is not None and args.scheme != "alternating":
        payload["bounds"] = counting_bounds(args.j, args.k, args.scheme, args.delta).as_dict()
    if args.scheme == "alternating":
        payload["unresolved_slack"] = "-O(1)"
    _emit(args, payload)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    params: dict[str, Any] = {}
    for key in ("n", "m", "d", "j", "k", "seed"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    if args.delta is not None:
        params["delta"] = args.delta
    if args.case is not None:
        params["case"] = _case_id(args.case)
    if args.bubbles:
        params["bubbles"] = True
    svg = figure(FigureSpec(args.kind, params, args.width, args.height, not args.no_annotations))
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the JSON report (or SVG/point set) to this file")
    common.add_argument("--json", action="store_true", help="print JSON instead of tab-separated rows")
    common.add_argument("--figures", metavar="DIR", help="also write SVG figures into DIR")
    common.add_argument("--eps-incidence", type=float)
    common.add_argument("--eps-empty", type=float)
    common.add_argument("--eps-disjoint", type=float)

    p = _Parser(prog="bubblelab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="generate a point set")
    c.add_argument("family", choices=["gadget", "collinear", "chain", "grid"])
    c.add_argument("--spec", help="parameters as a JSON object")
    for name, typ in (("n", int), ("m", int), ("j", int), ("k", int), ("d", float), ("spacing", float),
                      ("radius", float), ("rotation", float), ("epsilon", float), ("scale", float)):
        c.add_argument(f"--{name}", type=typ)
    c.add_argument("--delta", type=str)
    c.add_argument("--pad-to", dest="pad_to", type=int)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check one family of inequalities")
    vs = v.add_subparsers(dest="what", required=True, parser_class=_Parser)
    vc = vs.add_parser("circular", parents=[common])
    vc.add_argument("--n", type=int, default=174)
    vc.add_argument("--case", default="2", choices=["1", "2", "case1", "case2"])
    vc.add_argument("--scan", type=_range, metavar="LO:HI")
    vc.set_defaults(func=cmd_verify_circular)
    vl = vs.add_parser("line", parents=[common])
    vl.add_argument("--k", type=int, default=340)
    vl.add_argument("--subcase", default="all", choices=["i", "ii", "iii", "all"])
    vl.set_defaults(func=cmd_verify_line)
    v4 = vs.add_parser("lemma4", parents=[common])
    v4.set_defaults(func=cmd_verify_lemma4)
    vw = vs.add_parser("sandwich", parents=[common])
    vw.add_argument("--delta", type=_number, default=1 / 29)
    vw.add_argument("--lemma2-delta", type=_number, default=1 / 60)
    vw.set_defaults(func=cmd_verify_sandwich)
    v1 = vs.add_parser("lemma1", parents=[common])
    v1.add_argument("--delta", type=_number, action="append")
    v1.set_defaults(func=cmd_verify_lemma1)

    b = sub.add_parser("bubbles", parents=[common], help="bubble set from a Delaunay matching")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--mode", default="matching", choices=["matching"])
    b.set_defaults(func=cmd_bubbles)

    s = sub.add_parser("solve", parents=[common], help="disjoint bubble set with bounds")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--effort", default="fast", choices=sorted(EFFORT))
    s.add_argument("--structure", choices=STRUCTURES)
    s.set_defaults(func=cmd_solve)

    lo = sub.add_parser("lower", parents=[common], help="certified lower bound for a generated point set")
    lo.add_argument("--in", dest="input", required=True)
    lo.add_argument("--structure", choices=STRUCTURES)
    lo.set_defaults(func=cmd_lower)

    k = sub.add_parser("counts", parents=[common], help="bound constants and counting checks")
    k.add_argument("--scheme", required=True, choices=BOUND_SCHEMES)
    k.add_argument("--j", type=int)
    k.add_argument("--k", type=int, default=1)
    k.add_argument("--delta", type=_fraction)
    k.set_defaults(func=cmd_counts)

    f = sub.add_parser("figure", parents=[common], help="render an SVG figure")
    f.add_argument("--kind", required=True, choices=KINDS)
    for name, typ in (("n", int), ("m", int), ("j", int), ("k", int), ("d", float), ("seed", int)):
        f.add_argument(f"--{name}", type=typ)
    f.add_argument("--delta", type=_number)
    f.add_argument("--case")
    f.add_argument("--bubbles", action="store_true")
    f.add_argument("--width", type=int, default=640)
    f.add_argument("--height", type=int, default=480)
    f.add_argument("--no-annotations", action="store_true")
    f.set_defaults(func=cmd_figure)
    return p


def _error(exc: BaseException, kind: str | None = None) -> None:
    sys.stderr.write(json.dumps({"error": kind or type(exc).__name__, "message": str(exc)}) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _error(exc, "usage")
        return EXIT_USAGE
    try:
        return args.func(args)
    except (json.JSONDecodeError, StructureMismatch) as exc:
        _error(exc)
        return EXIT_USAGE
    except (BubbleLabError, ValueError, OSError, KeyError) as exc:
        _error(exc)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
