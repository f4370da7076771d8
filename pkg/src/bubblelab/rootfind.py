"""Bracketed scalar root finding: bisection with a safeguarded secant step."""

from __future__ import annotations

import math
from typing import Callable

from .errors import NoConvergence, NoRoot


def bracketed_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    xtol: float = 4e-16,
    ftol: float = 0.0,
    maxiter: int = 200,
) -> float:
    """Return ``x`` in ``[a, b]`` with ``f(x) = 0``.

    The secant point is accepted only when it lands inside the middle of the
    current bracket and the previous step shrank the bracket by at least half;
    otherwise the step is a plain bisection. Raises :class:`NoRoot` if
    ``f(a)`` and ``f(b)`` have the same strict sign.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NoRoot(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")

    last_width = abs(b - a)
    for _ in range(maxiter):
        width = abs(b - a)
        if width <= xtol * max(1.0, abs(a), abs(b)):
            return a if abs(fa) < abs(fb) else b
        x = b - fb * (b - a) / (fb - fa) if fb != fa else 0.5 * (a + b)
        lo, hi = min(a, b), max(a, b)
        margin = 0.05 * width
        if not (lo + margin < x < hi - margin) or width > 0.5 * last_width:
            x = 0.5 * (a + b)
        last_width = width
        fx = f(x)
        if fx == 0.0 or abs(fx) <= ftol:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, fa):
            a, fa = x, fx
        else:
            b, fb = x, fx
    raise NoConvergence(f"bracket [{a}, {b}] not resolved after {maxiter} iterations")


def sign_changes(f: Callable[[float], float], a: float, b: float, samples: int = 1000) -> int:
    """Count strict sign changes of ``f`` sampled at ``samples`` equispaced points."""
    count, prev = 0, None
    for i in range(samples):
        v = f(a + (b - a) * i / (samples - 1))
        if v == 0.0:
            continue
        s = v > 0
        if prev is not None and s != prev:
            count += 1
        prev = s
    return count
