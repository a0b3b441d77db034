"""Exception taxonomy shared across the package.

Two families matter to callers: `ValidationError` means the request itself
was inadmissible (bad parameters, wrong grid, out-of-domain input) and maps
to CLI exit code 2; `ComputationError` means a numerically valid request
failed during computation and maps to exit code 1.
"""


class FwError(Exception):
    pass


class ValidationError(FwError):
    pass


class ComputationError(FwError):
    pass


class ParameterOutOfRange(ValidationError):
    """Speed/background pair outside the window that carries a homoclinic orbit."""


class DomainError(ValidationError):
    """Scalar argument outside the admissible open interval of a closed form."""


class SingularInput(ValidationError):
    """Evaluation requested exactly at a pole of the formula."""


class NoHomoclinic(ValidationError):
    """Integration constants admit fewer than two equilibria below the wave speed."""


class DomainTooSmall(ValidationError):
    """Half-width too short for the profile tail to reach the background."""


class GridMismatch(ValidationError):
    """Operands sampled on incompatible grids."""


class NonzeroBackground(ValidationError):
    """Operation defined only for profiles decaying to zero."""


class IntegrationFailure(ComputationError):
    """An ODE solve or root inversion did not converge."""


class TruncationTooSmall(ComputationError):
    """Shooting interval too short: coefficient has not settled to its limit."""


class BracketFailure(ComputationError):
    """Sign structure required for bisection is absent; upstream data is suspect."""


class NonFinite(ComputationError):
    """A field stopped being finite (blow-up guard)."""

    def __init__(self, t: float | None = None, msg: str | None = None):
        self.t = t
        super().__init__(msg or f"non-finite field value encountered at t={t}")
