"""Helmholtz inverse (1 - d^2/dx^2)^(-1) and Sobolev inner products.

Two discretizations on purpose: on the line the operator is the convolution
with G(x) = exp(-|x|)/2, computed by exact per-cell integration of the
kernel against the piecewise-linear interpolant (plus a h^2/12 defect
correction that lifts the rule to fourth order); on the periodic grid it is
the Fourier multiplier 1/(1 + xi^2). The line rule extends the field by its
boundary constant, so constants are reproduced exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from .errors import GridMismatch, ValidationError


@dataclass
class PeriodicField:
    """Real samples on x_j = -L + j * (2L/n), j = 0..n-1 (no duplicate endpoint)."""

    half_length: float
    values: np.ndarray
    _hat: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.values)
        if n & (n - 1):
            raise ValidationError(f"periodic sample count {n} is not a power of two")

    @property
    def n(self) -> int:
        return len(self.values)

    def grid(self) -> np.ndarray:
        L = self.half_length
        return -L + np.arange(self.n) * (2.0 * L / self.n)

    def wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.rfftfreq(self.n, d=2.0 * self.half_length / self.n)

    def hat(self) -> np.ndarray:
        if self._hat is None:
            self._hat = np.fft.rfft(self.values)
        return self._hat


def periodic_from_profile_grid(x: np.ndarray, values: np.ndarray) -> PeriodicField:
    """Drop the duplicate +L endpoint of a symmetric line grid."""
    return PeriodicField(half_length=float(-x[0]), values=np.asarray(values[:-1], dtype=float))


# ---------------------------------------------------------------------------
# line kernel quadrature
# ---------------------------------------------------------------------------


def helmholtz_inverse_line(x: np.ndarray, f: np.ndarray, correction: bool = True) -> np.ndarray:
    """Convolution G * f on a uniform line grid, tails extended as constants.

    The running sums obey Left(i+1) = exp(-h) Left(i) + (cell integral), so the
    cost is O(n) and no factor ever exceeds one. Intended for fields that are
    flat at the ends; the flat value itself is handled exactly.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    if x.shape != f.shape:
        raise GridMismatch("grid and field shapes differ")
    h = x[1] - x[0]
    bg = 0.5 * (f[0] + f[-1])
    g = f - bg
    n = len(x)
    E = np.exp(-h)
    slope = np.diff(g) / h
    decay = 1.0 - (1.0 + h) * E
    jp = 0.5 * (g[1:] * (1.0 - E) - slope * decay)   # cell seen from its right node
    jm = 0.5 * (g[:-1] * (1.0 - E) + slope * decay)  # cell seen from its left node
    seq_l = np.concatenate(([0.5 * g[0]], jp))
    left = lfilter([1.0], [1.0, -E], seq_l)
    seq_r = np.concatenate(([0.5 * g[-1]], jm[::-1]))
    right = lfilter([1.0], [1.0, -E], seq_r)[::-1]
    out = left + right
    if correction:
        out = (out + (h * h / 12.0) * g) / (1.0 + h * h / 12.0)
    return out + bg


def convolution_matrix(x: np.ndarray, correction: bool = True) -> np.ndarray:
    """Dense symmetric matrix applying G * (piecewise-linear interpolant).

    Toeplitz with entries gamma(|i-j| h), gamma the exact hat-kernel
    convolution; the same h^2/12 correction as the O(n) path. Used for the
    dense spectral oracle, where explicit symmetry matters.
    """
    x = np.asarray(x, dtype=float)
    h = x[1] - x[0]
    n = len(x)
    off = (2.0 * np.sinh(h / 2.0) ** 2 / h) * np.exp(-h * np.abs(np.subtract.outer(np.arange(n), np.arange(n))))
    G = off
    np.fill_diagonal(G, 1.0 - (1.0 - np.exp(-h)) / h)
    if correction:
        G = (G + (h * h / 12.0) * np.eye(n)) / (1.0 + h * h / 12.0)
    return G


def helmholtz_inverse_periodic(f: PeriodicField) -> PeriodicField:
    """Fourier-symbol action: each mode divided by 1 + xi_j^2."""
    xi = f.wavenumbers()
    out = np.fft.irfft(f.hat() / (1.0 + xi**2), n=f.n)
    return PeriodicField(half_length=f.half_length, values=out)


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


def h1_inner_line(x: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    """Trapezoid integral of u v + u_x v_x with centered differences."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != x.shape or v.shape != x.shape:
        raise GridMismatch("h1_inner_line operands on different grids")
    ux = np.gradient(u, x)
    vx = np.gradient(v, x)
    return float(np.trapezoid(u * v + ux * vx, x))


def h1_inner_periodic(u: PeriodicField, v: PeriodicField) -> float:
    """Exact spectral form: sum of (1 + xi^2) uhat conj(vhat)."""
    if u.n != v.n or u.half_length != v.half_length:
        raise GridMismatch("h1_inner_periodic operands on different grids")
    xi = u.wavenumbers()
    w = np.full(u.n // 2 + 1, 2.0)
    w[0] = 1.0
    if u.n % 2 == 0:
        w[-1] = 1.0
    s = np.sum(w * (1.0 + xi**2) * (u.hat() * np.conj(v.hat())).real)
    return float(s * (2.0 * u.half_length) / u.n**2)


def l2_inner_line(x: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    if np.shape(u) != np.shape(x) or np.shape(v) != np.shape(x):
        raise GridMismatch("l2_inner_line operands on different grids")
    return float(np.trapezoid(np.asarray(u) * np.asarray(v), x))


def h1_norm_periodic(u: PeriodicField) -> float:
    return float(np.sqrt(max(h1_inner_periodic(u, u), 0.0)))
