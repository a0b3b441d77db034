"""Periodic pseudospectral evolution of u_t + u u_x + d/dx (1-d^2/dx^2)^(-1) u = 0.

Space is Fourier collocation on [-L, L) with the exact multiplier
1/(1 + xi^2) for the nonlocal term and a 2/3-rule dealiased conservative
product for the advection term; time is classical four-stage Runge-Kutta.
Orbital diagnostics measure the H1 distance to the traveling profile
minimized over spatial shifts (coarse correlation maximum, parabolic
refinement, then a Newton polish on the exact spectral correlation).
Wave breaking is possible for this equation; a run that stops being finite
is recorded as a blow-up event rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import NonFinite, ValidationError
from .nonlocal_op import PeriodicField, h1_norm_periodic
from .profile import decay_rate, derive_constants, phi_at

PERTURBATION_SHAPES = ("gauss_even", "gauss_odd", "noise")


@dataclass(frozen=True)
class SimConfig:
    c: float
    rho: float = 0.01
    shape: str = "gauss_even"
    half_width: float | None = None
    n: int = 4096
    dt: float = 0.005
    T: float = 100.0
    stride: float = 0.5
    seed: int = 1234
    k: float = 0.0  # constant background lift added to the initial state

    def resolved_half_width(self) -> float:
        if self.half_width is not None:
            return float(self.half_width)
        mu = decay_rate(derive_constants(self.c, 0.0))
        return max(100.0, 40.0 / mu)


@dataclass(frozen=True)
class SimState:
    t: float
    u: PeriodicField
    E0: float
    Q0: float


@dataclass
class OrbitalTrace:
    config: SimConfig
    rows: list[tuple[float, float, float, float, float, float, float]] = field(
        default_factory=list
    )
    blowup_t: float | None = None

    def sup_dist(self) -> float:
        return max(r[1] for r in self.rows if math.isfinite(r[1]))


class _Workspace:
    """Precomputed spectral operators for one (L, n) geometry."""

    def __init__(self, half_length: float, n: int):
        if n & (n - 1):
            raise ValidationError(f"n={n} is not a power of two")
        self.L = float(half_length)
        self.n = n
        self.dx = 2.0 * self.L / n
        self.x = -self.L + np.arange(n) * self.dx
        self.xi = 2.0 * np.pi * np.fft.rfftfreq(n, d=self.dx)
        self.ik = 1j * self.xi
        if n % 2 == 0:
            self.ik[-1] = 0.0  # Nyquist derivative pinned to zero
        self.symbol = 1.0 / (1.0 + self.xi**2)
        self.dealias = (np.arange(self.xi.size) <= n // 3).astype(float)

    def rhs_values(self, u: np.ndarray) -> np.ndarray:
        uh = np.fft.rfft(u)
        um = np.fft.irfft(uh * self.dealias, n=self.n)
        u2h = np.fft.rfft(um * um) * self.dealias
        return np.fft.irfft(-0.5 * self.ik * u2h - self.ik * self.symbol * uh, n=self.n)

    def rk4(self, u: np.ndarray, dt: float) -> np.ndarray:
        k1 = self.rhs_values(u)
        k2 = self.rhs_values(u + 0.5 * dt * k1)
        k3 = self.rhs_values(u + 0.5 * dt * k2)
        k4 = self.rhs_values(u + dt * k3)
        return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def energy(self, u: np.ndarray) -> float:
        Gu = np.fft.irfft(np.fft.rfft(u) * self.symbol, n=self.n)
        return float(np.sum(-(u**3) / 6.0 - u * Gu / 2.0) * self.dx)

    def charge(self, u: np.ndarray) -> float:
        return 0.5 * float(np.sum(u * u) * self.dx)


def _workspace_for(u: PeriodicField) -> _Workspace:
    return _Workspace(u.half_length, u.n)


def rhs(u: PeriodicField) -> PeriodicField:
    """Tendency -u u_x - d/dx (1-d^2/dx^2)^(-1) u, dealiased by the 2/3 rule."""
    out = _workspace_for(u).rhs_values(u.values)
    if not np.all(np.isfinite(out)):
        raise NonFinite(msg="non-finite tendency (possible wave breaking)")
    return PeriodicField(half_length=u.half_length, values=out)


def cfl_bound(u: PeriodicField) -> float:
    """dt bound 0.5 dx / max|u| used to validate configurations."""
    umax = float(np.max(np.abs(u.values)))
    dx = 2.0 * u.half_length / u.n
    return 0.5 * dx / max(umax, 1e-12)


def step(state: SimState, dt: float) -> SimState:
    """One deterministic Runge-Kutta step; raises NonFinite on blow-up."""
    ws = _workspace_for(state.u)
    unew = ws.rk4(state.u.values, dt)
    if not np.all(np.isfinite(unew)):
        raise NonFinite(t=state.t + dt)
    return SimState(
        t=state.t + dt,
        u=PeriodicField(half_length=state.u.half_length, values=unew),
        E0=state.E0,
        Q0=state.Q0,
    )


def spectral_shift(u: PeriodicField, s: float) -> PeriodicField:
    """u(. - s) evaluated with spectral accuracy."""
    xi = u.wavenumbers()
    shifted = np.fft.irfft(u.hat() * np.exp(-1j * xi * s), n=u.n)
    return PeriodicField(half_length=u.half_length, values=shifted)


def orbital_distance(
    u: PeriodicField, reference: PeriodicField
) -> tuple[float, float]:
    """inf over shifts s of the H1 distance between u and reference(. - s).

    Returns (distance, minimizing shift). The correlation over grid shifts
    gives the coarse argmax, a parabola through three points refines it, and
    a short Newton iteration on the spectral correlation pins s before the
    distance is evaluated on the actual difference field.
    """
    if u.n != reference.n or u.half_length != reference.half_length:
        raise ValidationError("orbital distance operands on different grids")
    n, L = u.n, u.half_length
    dx = 2.0 * L / n
    uh_full = np.fft.fft(u.values)
    vh_full = np.fft.fft(reference.values)
    xi = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    w = 1.0 + xi**2
    a = w * uh_full * np.conj(vh_full)
    corr = dx * np.real(np.fft.ifft(a))
    j = int(np.argmax(corr))
    cm, c0, cp = corr[(j - 1) % n], corr[j], corr[(j + 1) % n]
    denom = cm - 2.0 * c0 + cp
    delta = 0.5 * (cm - cp) / denom if abs(denom) > 1e-300 else 0.0
    s = (j + delta) * dx

    def C1(sv: float) -> float:
        return float(np.real(np.sum(1j * xi * a * np.exp(1j * xi * sv))) * dx / n)

    def C2(sv: float) -> float:
        return float(np.real(np.sum(-(xi**2) * a * np.exp(1j * xi * sv))) * dx / n)

    for _ in range(4):
        c2 = C2(s)
        if c2 >= 0.0 or not np.isfinite(c2):
            break
        ds = C1(s) / c2
        s -= ds
        if abs(ds) < 1e-14 * max(1.0, abs(s)):
            break
    s = (s + L) % (2.0 * L) - L
    diff = uh_full - vh_full * np.exp(-1j * xi * s)
    dist = math.sqrt(max(float(np.sum(w * np.abs(diff) ** 2)) * dx / n, 0.0))
    return dist, float(s)


def perturbation(shape: str, x: np.ndarray, half_length: float, seed: int) -> np.ndarray:
    """Unnormalized perturbation profile; 'noise' is band-limited and seeded."""
    if shape == "gauss_even":
        return np.exp(-(x**2) / 2.0)
    if shape == "gauss_odd":
        return x * np.exp(-(x**2) / 2.0)
    if shape == "noise":
        rng = np.random.default_rng(seed)
        mmax = max(8, int(half_length / np.pi))  # wavenumbers up to ~1
        theta = np.pi * x / half_length
        out = np.zeros_like(x)
        for m in range(1, mmax + 1):
            am, bm = rng.standard_normal(2)
            out += am * np.cos(m * theta) + bm * np.sin(m * theta)
        return out
    raise ValidationError(f"unknown perturbation shape {shape!r}; "
                          f"choose from {PERTURBATION_SHAPES}")


def initial_state(config: SimConfig) -> tuple[SimState, PeriodicField, _Workspace]:
    """Perturbed wave, the reference profile field, and the spectral workspace."""
    params = derive_constants(config.c, 0.0)
    L = config.resolved_half_width()
    mu = decay_rate(params)
    if L < 30.0 / mu:
        raise ValidationError(f"half_width {L} below 30/mu = {30.0 / mu:.2f}")
    ws = _Workspace(L, config.n)
    phi0 = phi_at(ws.x, params)
    ref = PeriodicField(half_length=L, values=phi0)
    u0 = phi0.copy()
    if config.rho != 0.0:
        pert = perturbation(config.shape, ws.x, L, config.seed)
        pf = PeriodicField(half_length=L, values=pert)
        scale = config.rho * h1_norm_periodic(ref) / h1_norm_periodic(pf)
        u0 = u0 + scale * pert
    if config.k != 0.0:
        u0 = u0 + config.k
    uf = PeriodicField(half_length=L, values=u0)
    if config.dt > cfl_bound(uf):
        raise ValidationError(
            f"dt={config.dt} violates the advection bound {cfl_bound(uf):.4g}"
        )
    state = SimState(t=0.0, u=uf, E0=ws.energy(u0), Q0=ws.charge(u0))
    return state, ref, ws


def run(config: SimConfig) -> OrbitalTrace:
    """Evolve the perturbed wave to T, recording the orbital diagnostics.

    Blow-up is data: the trace keeps everything recorded so far, appends a
    marker row of NaNs at the breaking time, and sets blowup_t.
    """
    state, ref, ws = initial_state(config)
    trace = OrbitalTrace(config=config)
    rec_every = max(1, int(round(config.stride / config.dt)))
    nsteps = int(round(config.T / config.dt))

    def record(st: SimState) -> None:
        dist, shift = orbital_distance(st.u, ref)
        E = ws.energy(st.u.values)
        Q = ws.charge(st.u.values)
        dE = abs(E - st.E0) / max(abs(st.E0), 1e-300)
        dQ = abs(Q - st.Q0) / max(abs(st.Q0), 1e-300)
        trace.rows.append((st.t, dist, shift, E, Q, dE, dQ))

    record(state)
    u = state.u.values
    for i in range(1, nsteps + 1):
        u = ws.rk4(u, config.dt)
        if not np.all(np.isfinite(u)):
            t_blow = i * config.dt
            trace.blowup_t = t_blow
            trace.rows.append((t_blow, float("nan"), float("nan"), float("nan"),
                               float("nan"), float("nan"), float("nan")))
            return trace
        if i % rec_every == 0 or i == nsteps:
            state = replace(
                state,
                t=i * config.dt,
                u=PeriodicField(half_length=ws.L, values=u.copy()),
            )
            record(state)
    return trace


# ---------------------------------------------------------------------------
# artifacts
# ---------------------------------------------------------------------------


def write_trace_csv(trace: OrbitalTrace, path) -> None:
    from pathlib import Path

    lines = ["t,dist,shift,E,Q,dE_rel,dQ_rel"]
    for row in trace.rows:
        lines.append(",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def parse_config_text(text: str) -> dict:
    """Key-value lines 'key = value'; '#' starts a comment."""
    out: dict[str, float | int | str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"malformed config line: {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if key in {"n", "seed"}:
            out[key] = int(val)
        elif key in {"shape"}:
            out[key] = val
        elif key in {"c", "k", "rho", "L", "dt", "T", "stride"}:
            out[key] = float(val)
        else:
            raise ValidationError(f"unknown config key {key!r}")
    return out


def format_config_text(config: SimConfig) -> str:
    L = config.resolved_half_width()
    pairs = [
        ("c", config.c), ("k", config.k), ("rho", config.rho),
        ("shape", config.shape), ("L", L), ("n", config.n),
        ("dt", config.dt), ("T", config.T), ("stride", config.stride),
        ("seed", config.seed),
    ]
    return "\n".join(f"{k} = {v}" for k, v in pairs) + "\n"
