"""Bracketed scalar root finding: bisection with a secant polish.

Bisection is run on a proven sign change until the bracket is small, then a
few secant steps sharpen the root without ever leaving the bracket. The
combination is guaranteed to converge and reaches ~1e-15 relative accuracy
on smooth functions.
"""

from __future__ import annotations

from typing import Callable

from .errors import BracketFailure


def bracketed_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    xtol: float = 1e-14,
    bisect_iters: int = 60,
    polish_iters: int = 8,
) -> float:
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise BracketFailure(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    for _ in range(bisect_iters):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
        if abs(b - a) < xtol * max(1.0, abs(a), abs(b)):
            break
    x0, f0 = a, fa
    x1, f1 = b, fb
    for _ in range(polish_iters):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (min(a, b) <= x2 <= max(a, b)):
            break
        x0, f0 = x1, f1
        x1, f1 = x2, f(x2)
        if abs(x1 - x0) < xtol * max(1.0, abs(x1)):
            break
    return x1 if abs(f1) <= abs(f0) else x0


def expand_bracket_down(
    f: Callable[[float], float],
    hi: float,
    step: float = 0.5,
    max_expand: int = 60,
) -> tuple[float, float]:
    """Walk left from `hi` until f changes sign; returns the bracket (lo, hi)."""
    fhi = f(hi)
    lo = hi - step
    for _ in range(max_expand):
        if f(lo) * fhi < 0.0:
            return lo, hi
        step *= 2.0
        lo -= step
    raise BracketFailure(f"no sign change found left of {hi}")
