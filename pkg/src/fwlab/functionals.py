"""Conserved functionals and the variational characterization of the wave.

E(u) = integral of -u^3/6 - u (G*u)/2, Q(u) = (1/2) integral of u^2, and the
Lyapunov combination H = E + c Q whose critical points are the zero-background
solitary waves. Two charge normalizations coexist in the stability analysis:
`charge` carries the 1/2, `charge_unnormalized` is the plain integral of u^2,
which is what the closed-form stability index differentiates. They differ by
an exact factor of two; both are exposed rather than silently reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonzeroBackground
from .nonlocal_op import (
    PeriodicField,
    helmholtz_inverse_line,
    helmholtz_inverse_periodic,
)
from .profile import ProfileGrid


@dataclass(frozen=True)
class FunctionalValues:
    E: float
    Q: float
    H: float
    c: float


def energy_line(x: np.ndarray, u: np.ndarray) -> float:
    Gu = helmholtz_inverse_line(x, u)
    return float(np.trapezoid(-(u**3) / 6.0 - u * Gu / 2.0, x))


def charge_line(x: np.ndarray, u: np.ndarray) -> float:
    return 0.5 * float(np.trapezoid(u * u, x))


def charge_unnormalized_line(x: np.ndarray, u: np.ndarray) -> float:
    """Integral of u^2 without the 1/2 (stability-index convention)."""
    return float(np.trapezoid(u * u, x))


def energy_periodic(u: PeriodicField) -> float:
    Gu = helmholtz_inverse_periodic(u).values
    dx = 2.0 * u.half_length / u.n
    return float(np.sum(-(u.values**3) / 6.0 - u.values * Gu / 2.0) * dx)


def charge_periodic(u: PeriodicField) -> float:
    dx = 2.0 * u.half_length / u.n
    return 0.5 * float(np.sum(u.values**2) * dx)


def lyapunov_line(x: np.ndarray, u: np.ndarray, c: float) -> FunctionalValues:
    E = energy_line(x, u)
    Q = charge_line(x, u)
    return FunctionalValues(E=E, Q=Q, H=E + c * Q, c=c)


def lyapunov_periodic(u: PeriodicField, c: float) -> FunctionalValues:
    E = energy_periodic(u)
    Q = charge_periodic(u)
    return FunctionalValues(E=E, Q=Q, H=E + c * Q, c=c)


def first_variation_residual(p: ProfileGrid) -> tuple[float, np.ndarray]:
    """Pointwise residual of the critical-point equation for H at the profile.

    The residual field is -phi^2/2 - G*phi + c phi, identically zero for the
    exact zero-background wave; the returned max is discretization noise.
    """
    if p.params.k != 0.0:
        raise NonzeroBackground(
            "critical-point residual is defined for zero-background profiles"
        )
    c = p.params.c
    Gphi = helmholtz_inverse_line(p.x, p.phi)
    res = -p.phi**2 / 2.0 - Gphi + c * p.phi
    return float(np.max(np.abs(res))), res


def functionals_fragment(p: ProfileGrid) -> dict:
    """JSON-ready summary used inside the CLI reports."""
    vals = lyapunov_line(p.x, p.phi, p.params.c)
    fv, _ = first_variation_residual(p)
    return {
        "E": vals.E,
        "Q": vals.Q,
        "H": vals.H,
        "first_variation_residual": fv,
    }
