import numpy as np
import pytest

from fwlab import PeriodicField, helmholtz_inverse_line, helmholtz_inverse_periodic
from fwlab.errors import GridMismatch, ValidationError
from fwlab.nonlocal_op import (
    convolution_matrix,
    h1_inner_line,
    h1_inner_periodic,
    l2_inner_line,
    periodic_from_profile_grid,
)


def line_grid(L=100.0, n=4096):
    return np.linspace(-L, L, n + 1)


def windowed_noise(x, seed, width_frac=0.25):
    rng = np.random.default_rng(seed)
    L = x[-1]
    raw = rng.standard_normal(x.size)
    # keep it smooth: convolve with a gaussian in index space
    k = np.exp(-np.linspace(-4, 4, 65) ** 2)
    smooth = np.convolve(raw, k / k.sum(), mode="same")
    return smooth * np.exp(-((x / (width_frac * L)) ** 2))


class TestLineKernel:
    def test_constant_preserved_exactly(self):
        x = line_grid()
        out = helmholtz_inverse_line(x, np.full_like(x, 2.7))
        assert np.max(np.abs(out - 2.7)) == 0.0

    def test_exponential_closed_form(self):
        # G * exp(-|x|) = (1 + |x|) exp(-|x|) / 2; kink limits the rate to O(h^2)
        x = line_grid()
        exact = (1 + np.abs(x)) * np.exp(-np.abs(x)) / 2
        err = np.max(np.abs(helmholtz_inverse_line(x, np.exp(-np.abs(x))) - exact))
        assert err < 5e-4
        x2 = line_grid(n=8192)
        exact2 = (1 + np.abs(x2)) * np.exp(-np.abs(x2)) / 2
        err2 = np.max(np.abs(helmholtz_inverse_line(x2, np.exp(-np.abs(x2))) - exact2))
        assert err / err2 > 3.0

    def test_gaussian_matches_periodic_symbol(self):
        x = line_grid()
        f = np.exp(-(x**2) / 8.0)
        line = helmholtz_inverse_line(x, f)
        per = helmholtz_inverse_periodic(periodic_from_profile_grid(x, f)).values
        rel = np.max(np.abs(line[:-1] - per)) / np.max(np.abs(per))
        assert rel < 1e-8

    def test_parity_preserved(self, profile12):
        out = helmholtz_inverse_line(profile12.x, profile12.phi_x)
        assert np.max(np.abs(out + out[::-1])) < 1e-13
        assert abs(out[profile12.n // 2]) < 1e-15

    def test_operator_identity(self):
        # (1 - d^2/dx^2) applied with centered differences to G*f returns f
        x = line_grid()
        f = np.exp(-(x**2) / 50.0)
        g = helmholtz_inverse_line(x, f)
        h = x[1] - x[0]
        lap = (g[2:] - 2 * g[1:-1] + g[:-2]) / (h * h)
        rec = g[1:-1] - lap
        rel = np.max(np.abs(rec - f[1:-1])) / np.max(np.abs(f))
        assert rel < 1e-6

    def test_self_adjoint(self):
        x = line_grid(n=2048)
        f = windowed_noise(x, 1)
        g = windowed_noise(x, 2)
        a = l2_inner_line(x, helmholtz_inverse_line(x, f), g)
        b = l2_inner_line(x, f, helmholtz_inverse_line(x, g))
        assert abs(a - b) < 1e-12 * max(abs(a), abs(b))

    @pytest.mark.parametrize("seed", range(5))
    def test_positivity(self, seed):
        x = line_grid(n=2048)
        f = windowed_noise(x, seed)
        assert l2_inner_line(x, helmholtz_inverse_line(x, f), f) >= 0.0

    def test_matrix_matches_operator(self):
        x = line_grid(n=1024)
        M = convolution_matrix(x)
        assert np.max(np.abs(M - M.T)) == 0.0
        f = windowed_noise(x, 3, width_frac=0.15)  # boundary values ~1e-19
        assert np.max(np.abs(M @ f - helmholtz_inverse_line(x, f))) < 1e-10

    def test_grid_mismatch(self):
        x = line_grid(n=1024)
        with pytest.raises(GridMismatch):
            helmholtz_inverse_line(x, np.zeros(17))


class TestPeriodicSymbol:
    def test_constant_unchanged(self):
        f = PeriodicField(50.0, np.full(256, 3.3))
        out = helmholtz_inverse_periodic(f).values
        assert np.max(np.abs(out - 3.3)) < 1e-14

    def test_single_mode_diagonal_action(self):
        L, n = 50.0, 512
        x = -L + np.arange(n) * (2 * L / n)
        xi1 = np.pi / L
        f = PeriodicField(L, np.cos(xi1 * x))
        out = helmholtz_inverse_periodic(f).values
        assert np.max(np.abs(out - np.cos(xi1 * x) / (1 + xi1**2))) < 1e-14

    def test_smoothing_bound(self):
        rng = np.random.default_rng(7)
        f = PeriodicField(30.0, rng.standard_normal(512))
        Gf = helmholtz_inverse_periodic(f).values
        dx = 60.0 / 512
        assert np.sum(f.values * Gf) * dx <= np.sum(f.values**2) * dx

    def test_roundtrip_real(self):
        rng = np.random.default_rng(11)
        vals = rng.standard_normal(1024)
        f = PeriodicField(40.0, vals)
        back = np.fft.irfft(f.hat(), n=f.n)
        assert np.max(np.abs(back - vals)) < 1e-13 * np.max(np.abs(vals))

    def test_power_of_two_required(self):
        with pytest.raises(ValidationError):
            PeriodicField(10.0, np.zeros(300))


class TestInnerProducts:
    def test_parseval_single_mode(self):
        L, n = 50.0, 512
        x = -L + np.arange(n) * (2 * L / n)
        xi1 = 2 * np.pi / (2 * L)
        u = PeriodicField(L, np.sin(xi1 * x))
        assert h1_inner_periodic(u, u) == pytest.approx(L * (1 + xi1**2), rel=1e-13)

    def test_distinct_modes_orthogonal(self):
        L, n = 50.0, 512
        x = -L + np.arange(n) * (2 * L / n)
        xi1 = 2 * np.pi / (2 * L)
        u = PeriodicField(L, np.sin(xi1 * x))
        v = PeriodicField(L, np.sin(3 * xi1 * x))
        assert abs(h1_inner_periodic(u, v)) < 1e-12

    def test_zero(self):
        u = PeriodicField(10.0, np.zeros(64))
        assert h1_inner_periodic(u, u) == 0.0
        x = line_grid(n=1024)
        assert h1_inner_line(x, np.zeros_like(x), np.zeros_like(x)) == 0.0

    def test_line_matches_periodic_for_decayed_fields(self, profile12):
        u = profile12.phi
        line = h1_inner_line(profile12.x, u, u)
        pu = periodic_from_profile_grid(profile12.x, u)
        per = h1_inner_periodic(pu, pu)
        assert line == pytest.approx(per, rel=1e-4)  # centered-difference gradient

    def test_grid_mismatch(self):
        u = PeriodicField(10.0, np.zeros(64))
        v = PeriodicField(20.0, np.zeros(64))
        with pytest.raises(GridMismatch):
            h1_inner_periodic(u, v)
        x = line_grid(n=1024)
        with pytest.raises(GridMismatch):
            h1_inner_line(x, np.zeros_like(x), np.zeros(3))
