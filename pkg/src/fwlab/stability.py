"""Stability index d''(c), its critical speed c0, and cross-validation.

Along the zero-background family, d'(c) equals the profile charge in the
unnormalized convention integral(phi0^2), which evaluates in closed form to

    Q(c) = 16 (c-1) sqrt(c(c-1))
         + (8/3)(c-1)(4-3c) ln((3c - 2 + 3 sqrt(c(c-1))) / sqrt(4-3c)),

and differentiating once more gives

    d''(c) = 28 sqrt(c(c-1)) + (8/3)(7-6c) ln((3c - 2 + 3 sqrt(c(c-1))) / sqrt(4-3c)).

d'' is positive up to c = 7/6, changes sign exactly once afterwards, and its
unique zero c0 on (7/6, 4/3) separates proven orbital stability (below) from
an indeterminate regime (above). The root sits ~1.3e-5 away from 4/3 where
the logarithm has a square-root singularity, so it is solved in the
substituted variable s = 4 - 3c to keep full conditioning.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .functionals import charge_unnormalized_line
from .profile import build_profile, derive_constants


def _check_speed(c: float) -> None:
    if not (1.0 < c < 4.0 / 3.0):
        raise DomainError(f"speed c={c} outside (1, 4/3)")


def log_argument(c: float) -> float:
    """Argument of the logarithm in the closed forms; > 1 and increasing."""
    r = np.sqrt(c * (c - 1.0))
    return (3.0 * c - 2.0 + 3.0 * r) / np.sqrt(4.0 - 3.0 * c)


def Q_closed_form(c: float) -> float:
    """Closed-form integral of phi0^2 over the line (unnormalized charge)."""
    _check_speed(c)
    r = np.sqrt(c * (c - 1.0))
    return float(
        16.0 * (c - 1.0) * r
        + (8.0 / 3.0) * (c - 1.0) * (4.0 - 3.0 * c) * np.log(log_argument(c))
    )


def d2_closed_form(c: float) -> float:
    """Closed-form stability index d''(c)."""
    _check_speed(c)
    r = np.sqrt(c * (c - 1.0))
    return float(28.0 * r + (8.0 / 3.0) * (7.0 - 6.0 * c) * np.log(log_argument(c)))


def _d2_of_s(s: float) -> float:
    return d2_closed_form((4.0 - s) / 3.0)


@dataclass(frozen=True)
class CriticalSpeed:
    c0: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "c0": self.c0,
            "bracket_lo": self.bracket_lo,
            "bracket_hi": self.bracket_hi,
            "iterations": self.iterations,
            "residual": self.residual,
        }


@lru_cache(maxsize=1)
def find_c0() -> CriticalSpeed:
    """Unique zero of d'' on (7/6, 4/3), bisected in log(s) with s = 4 - 3c.

    The bisection tightens s to below 1e-9 absolute; the returned bracket is
    reported in c.
    """
    lo, hi = np.log(1e-12), np.log(0.5)
    if not (_d2_of_s(np.exp(lo)) < 0.0 < _d2_of_s(np.exp(hi))):
        raise DomainError("sign structure of d'' changed; closed form corrupted")
    iterations = 0
    while np.exp(hi) - np.exp(lo) > 1e-9:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if _d2_of_s(np.exp(mid)) < 0.0:
            lo = mid
        else:
            hi = mid
        if iterations > 200:
            break
    s0 = 0.5 * (np.exp(lo) + np.exp(hi))
    c0 = (4.0 - s0) / 3.0
    return CriticalSpeed(
        c0=float(c0),
        bracket_lo=float((4.0 - np.exp(hi)) / 3.0),
        bracket_hi=float((4.0 - np.exp(lo)) / 3.0),
        iterations=iterations,
        residual=float(d2_closed_form(c0)),
    )


def charge_quadrature(c: float, n: int = 4096, half_width: float | None = None) -> float:
    """Trapezoid integral of phi0^2 over a freshly built profile."""
    p = build_profile(derive_constants(c, 0.0), half_width=half_width, n=n)
    return charge_unnormalized_line(p.x, p.phi)


def d2_finite_difference(c: float, h: float = 1e-4, n: int = 4096) -> float:
    """Centered difference of the quadrature charge; independent of the closed form.

    The step shrinks automatically near the window edges so the stencil stays
    admissible. Within ~1e-5 of 4/3 the clamped step is so small that the
    quadrature noise of the near-peakon profiles dominates; values there are
    recorded data, not precision claims.
    """
    _check_speed(c)
    h_eff = min(h, 0.45 * (4.0 / 3.0 - c), 0.45 * (c - 1.0))
    if h_eff <= 0.0:
        raise DomainError(f"no admissible stencil around c={c}")
    return (charge_quadrature(c + h_eff, n=n) - charge_quadrature(c - h_eff, n=n)) / (
        2.0 * h_eff
    )


@dataclass(frozen=True)
class StabilityReport:
    c: float
    Q_closed: float
    d2_closed: float
    d2_fd: float | None
    verdict: str
    c0: float

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "Q_closed": self.Q_closed,
            "d2_closed": self.d2_closed,
            "d2_fd": self.d2_fd,
            "verdict": self.verdict,
            "c0": self.c0,
        }


def stability_verdict(c: float) -> str:
    """'Stable' below c0 (with d'' > 0 double-checked), 'Indeterminate' above.

    Above c0 the convexity criterion fails but no instability follows from it,
    so the verdict deliberately stays agnostic there.
    """
    _check_speed(c)
    c0 = find_c0().c0
    if c < c0 and d2_closed_form(c) > 0.0:
        return "Stable"
    return "Indeterminate"


def stability_report(c: float, fd_step: float | None = 1e-4) -> StabilityReport:
    d2fd = d2_finite_difference(c, h=fd_step) if fd_step else None
    return StabilityReport(
        c=c,
        Q_closed=Q_closed_form(c),
        d2_closed=d2_closed_form(c),
        d2_fd=d2fd,
        verdict=stability_verdict(c),
        c0=find_c0().c0,
    )


def sweep_d2(cs, fd_step: float = 1e-4, threads: int = 1) -> list[StabilityReport]:
    """Stability reports across a speed grid, row order ascending in c."""
    cs = sorted(float(c) for c in cs)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(lambda c: stability_report(c, fd_step), cs))
    return [stability_report(c, fd_step) for c in cs]
