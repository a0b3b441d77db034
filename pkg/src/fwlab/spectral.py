"""Spectrum of the linearized operator L = (c - phi0) - (1 - d^2/dx^2)^(-1).

The essential spectrum is the interval [c-1, c) fixed by the constant state
at infinity. Point spectrum below it is located by a polar-angle shooting
scheme: with p = (1-d^2/dx^2)^(-1) v, the eigenvalue problem becomes

    p_xx = A(x, lambda) p,   A = 1 - 1/(c - phi0 - lambda),

and writing (p, p_x) = rho (cos theta, sin theta) gives the angle equation
theta_x = A cos^2(theta) - sin^2(theta). The solution decaying to the left
enters along the angle arctan(sqrt(A_inf)); eigenvalues are the lambda for
which the angle at x = 0 hits a multiple of -pi/2. The angle at x = 0 is
strictly decreasing in lambda, so there is exactly one interior negative
eigenvalue (angle 0) besides the kernel direction phi0' (angle -pi/2).

A dense symmetric discretization (multiplication matrix minus the exact
hat-kernel convolution matrix) provides an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from .errors import (
    BracketFailure,
    DomainError,
    NonzeroBackground,
    TruncationTooSmall,
)
from .nonlocal_op import convolution_matrix, helmholtz_inverse_line
from .profile import (
    ProfileGrid,
    WaveParams,
    build_profile,
    decay_rate,
    phi_at,
    phi_max_value,
)
from .roots import bracketed_root

KERNEL_EIG_TOL = 1e-6  # accepted |eigenvalue| of the kernel direction at n=2048


def essential_spectrum(c: float) -> tuple[float, float]:
    """Endpoints [lo, hi) of the essential spectrum for speed c."""
    if not (1.0 < c < 4.0 / 3.0):
        raise DomainError(f"c={c} outside (1, 4/3)")
    r = np.linspace(0.0, 1e3, 200001)
    lo = float(np.min(dispersion_curve(r, c)))
    return lo, c


def dispersion_curve(r, c: float):
    """Spectrum of the constant-coefficient operator at infinity, c - 1/(1+r^2)."""
    r = np.asarray(r, dtype=float)
    return c - 1.0 / (1.0 + r * r)


def lambda_lower_bound(c: float) -> float:
    """Lower spectral bound c - 1 - phi_max; negative on the whole speed window."""
    return c - 1.0 - phi_max_value(c, 0.0)


def spectral_bounds(p: ProfileGrid) -> tuple[float, float]:
    if p.params.k != 0.0:
        raise NonzeroBackground("spectral bounds stated for zero-background profiles")
    return lambda_lower_bound(p.params.c), p.params.c


@dataclass
class PruferProblem:
    """Shooting data for one spectral parameter lambda.

    A is the angle-equation coefficient sampled through a dense cubic
    interpolant of the profile, so right-hand-side evaluations stay cheap.
    """

    profile: ProfileGrid
    lam: float
    X: float
    A: object  # callable x -> A(x, lam)

    @property
    def A_inf(self) -> float:
        return 1.0 - 1.0 / (self.profile.params.c - self.lam)


def make_prufer_problem(
    p: ProfileGrid,
    lam: float,
    X: float | None = None,
    node_spacing: float = 0.02,
) -> PruferProblem:
    if p.params.k != 0.0:
        raise NonzeroBackground("shooting problem stated for zero-background profiles")
    c = p.params.c
    if X is None:
        X = min(30.0 / decay_rate(p.params), p.half_width)
    X = float(X)
    m = max(int(np.ceil((X + 1.0) / node_spacing)), 64)
    xs = np.linspace(-(X + 1.0), 0.0, m + 1)
    spline = CubicSpline(xs, phi_at(xs, p.params))
    lam_f = float(lam)

    def A(x):
        return 1.0 - 1.0 / (c - spline(x) - lam_f)

    prob = PruferProblem(profile=p, lam=lam_f, X=X, A=A)
    drift = abs(A(-X) - prob.A_inf)
    if drift > 1e-10:
        raise TruncationTooSmall(
            f"A(-X) misses its limit by {drift:.3e} at X={X}; enlarge the domain"
        )
    return prob


def prufer_shoot(prob: PruferProblem, rtol: float = 1e-11) -> float:
    """Angle at x = 0 of the solution decaying to the left; continuous in x."""
    A = prob.A
    theta0 = float(np.arctan(np.sqrt(prob.A_inf)))

    def rhs(x, th):
        ct = np.cos(th[0])
        st = np.sin(th[0])
        return (A(x) * ct * ct - st * st,)

    sol = solve_ivp(
        rhs,
        (-prob.X, 0.0),
        (theta0,),
        method="DOP853",
        rtol=rtol,
        atol=1e-12,
    )
    if not sol.success:
        raise BracketFailure(f"angle integration failed: {sol.message}")
    return float(sol.y[0, -1])


def theta_at_zero(p: ProfileGrid, lam: float, X: float | None = None) -> float:
    return prufer_shoot(make_prufer_problem(p, lam, X))


def find_negative_eigenvalue(
    p: ProfileGrid,
    lam_tol: float = 1e-10,
    theta_tol: float = 1e-8,
) -> float:
    """Unique interior eigenvalue below the essential spectrum.

    Bisection (plus secant polish) on the angle-at-zero over (lambda0, 0);
    the angle is positive at lambda0 and -pi/2 at 0, and decreases strictly.
    """
    lam0 = lambda_lower_bound(p.params.c)
    th_lo = theta_at_zero(p, lam0)
    if th_lo < 0.0:
        raise BracketFailure(
            f"angle at lambda0 is {th_lo} < 0; profile or truncation is corrupted"
        )
    lam_star = bracketed_root(lambda lam: theta_at_zero(p, lam), lam0, 0.0, xtol=lam_tol)
    resid = theta_at_zero(p, lam_star)
    if abs(resid) > theta_tol:
        raise BracketFailure(f"eigenvalue polish left |theta|={abs(resid):.3e}")
    return float(lam_star)


def verify_kernel(p: ProfileGrid, x_eps_cells: int = 10) -> tuple[float, bool]:
    """Check L phi0' = 0 on the grid and the sign pattern of p0 = G * phi0'.

    p0 must be odd, vanish only at the origin, and stay negative for x > 0;
    the sign is tested outside a few cells around the origin.
    """
    c = p.params.c
    p0 = helmholtz_inverse_line(p.x, p.phi_x)
    kernel_residual = float(np.max(np.abs((c - p.phi) * p.phi_x - p0)))
    m = p.n // 2
    h = p.x[1] - p.x[0]
    odd_defect = float(np.max(np.abs(p0 + p0[::-1])))
    right = p0[m + x_eps_cells :]
    sign_ok = bool(
        abs(p0[m]) < 1e-12 and odd_defect < 1e-12 and np.all(right < 0.0)
    )
    return kernel_residual, sign_ok


def xbar(prob: PruferProblem) -> float:
    """Unique nonnegative zero of A(., lambda); 0 when A(0) is already >= 0."""
    params = prob.profile.params
    c, lam = params.c, prob.lam
    target = c - 1.0 - lam

    def A_exact(x: float) -> float:
        return 1.0 - 1.0 / (c - phi_at(x, params) - lam)

    if A_exact(0.0) >= 0.0:
        return 0.0
    # A < 0 inside, > 0 outside: phi(xbar) = c - 1 - lambda
    return float(
        bracketed_root(lambda x: phi_at(x, params) - target, 0.0, prob.X, xtol=1e-12)
    )


# ---------------------------------------------------------------------------
# dense matrix cross-check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixOracle:
    n: int
    half_width: float
    eigenvalues: np.ndarray
    below_essential: np.ndarray
    n_negative: int
    closest_to_zero: float
    lambda_star: float
    ground_vector: np.ndarray
    x: np.ndarray


def operator_matrix(
    params: WaveParams,
    half_width: float | None = None,
    n: int = 2048,
) -> tuple[np.ndarray, np.ndarray]:
    """Grid and dense symmetric matrix of L on that grid."""
    p = build_profile(params, half_width=half_width, n=n)
    M = np.diag(params.c - p.phi) - convolution_matrix(p.x)
    return p.x, M


def matrix_oracle(
    params: WaveParams,
    half_width: float | None = None,
    n: int = 2048,
) -> MatrixOracle:
    if params.k != 0.0:
        raise NonzeroBackground("matrix cross-check stated for zero background")
    x, M = operator_matrix(params, half_width=half_width, n=n)
    evals, evecs = np.linalg.eigh(M)
    ess_lo = params.c - 1.0
    below = evals[evals < ess_lo - 1e-4]
    closest = float(evals[np.argmin(np.abs(evals))])
    # the eigenvalue nearest zero is the discrete kernel direction; genuine
    # negatives are counted without it so the count is resolution independent
    n_negative = int(np.sum(evals < 0.0)) - (1 if closest < 0.0 else 0)
    return MatrixOracle(
        n=n,
        half_width=float(-x[0]),
        eigenvalues=evals,
        below_essential=below,
        n_negative=n_negative,
        closest_to_zero=closest,
        lambda_star=float(evals[0]),
        ground_vector=evecs[:, 0],
        x=x,
    )


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralReport:
    c: float
    ess_lo: float
    ess_hi: float
    lambda0: float
    lambda_star: float
    theta_at_zero: float
    kernel_residual: float
    p0_sign_ok: bool
    matrix_n_negative: int | None
    matrix_closest_to_zero: float | None

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "ess_lo": self.ess_lo,
            "ess_hi": self.ess_hi,
            "lambda0": self.lambda0,
            "lambda_star": self.lambda_star,
            "theta_at_zero": self.theta_at_zero,
            "kernel_residual": self.kernel_residual,
            "p0_sign_ok": self.p0_sign_ok,
            "matrix_oracle": {
                "n_negative": self.matrix_n_negative,
                "closest_to_zero": self.matrix_closest_to_zero,
            },
        }


def spectral_report(
    p: ProfileGrid,
    matrix_n: int | None = 2048,
) -> SpectralReport:
    c = p.params.c
    ess_lo, ess_hi = essential_spectrum(c)
    lam0 = lambda_lower_bound(c)
    lam_star = find_negative_eigenvalue(p)
    th0 = theta_at_zero(p, 0.0)
    kres, sign_ok = verify_kernel(p)
    mn = mz = None
    if matrix_n:
        oracle = matrix_oracle(p.params, n=matrix_n)
        mn = oracle.n_negative
        mz = oracle.closest_to_zero
    return SpectralReport(
        c=c,
        ess_lo=ess_lo,
        ess_hi=ess_hi,
        lambda0=lam0,
        lambda_star=lam_star,
        theta_at_zero=th0,
        kernel_residual=kres,
        p0_sign_ok=sign_ok,
        matrix_n_negative=mn,
        matrix_closest_to_zero=mz,
    )
