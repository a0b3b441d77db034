"""Numerical laboratory for smooth solitary waves of the Fornberg-Whitham equation."""

from .profile import (
    ProfileGrid,
    TurningPoints,
    WaveParams,
    background_shift,
    build_profile,
    critical_points,
    decay_rate,
    derive_constants,
    phi_at,
    phi_max_value,
    phi_x_at,
    potential_F,
    profile_residuals,
    turning_points,
)
from .nonlocal_op import (
    PeriodicField,
    helmholtz_inverse_line,
    helmholtz_inverse_periodic,
    h1_inner_line,
    h1_inner_periodic,
)
from .functionals import (
    FunctionalValues,
    charge_line,
    charge_periodic,
    charge_unnormalized_line,
    energy_line,
    energy_periodic,
    first_variation_residual,
    lyapunov_line,
)
from .spectral import (
    MatrixOracle,
    PruferProblem,
    SpectralReport,
    essential_spectrum,
    find_negative_eigenvalue,
    lambda_lower_bound,
    make_prufer_problem,
    matrix_oracle,
    prufer_shoot,
    spectral_bounds,
    spectral_report,
    theta_at_zero,
    verify_kernel,
    xbar,
)
from .stability import (
    CriticalSpeed,
    StabilityReport,
    Q_closed_form,
    d2_closed_form,
    d2_finite_difference,
    find_c0,
    stability_report,
    stability_verdict,
    sweep_d2,
)
from .evolve import (
    OrbitalTrace,
    SimConfig,
    SimState,
    orbital_distance,
    rhs,
    run,
    spectral_shift,
    step,
)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
