"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A configuration file or CLI option is invalid."""


class ModelError(RuntimeError):
    """Requested parameters fall outside the model's validity regime."""


class SolverError(RuntimeError):
    """A numerical solve failed or is untrustworthy."""


class SingularFrequencyError(SolverError):
    """A response denominator is numerically singular at a frequency.

    The offending frequency (rad/s) is stored on ``frequency``.
    """

    def __init__(self, frequency: float, message: str | None = None):
        self.frequency = frequency
        super().__init__(
            message or f"singular denominator at omega = {frequency:.6e} rad/s"
        )


class BracketError(SolverError):
    """Root bracketing failed on a named branch."""

    def __init__(self, branch: int, message: str | None = None):
        self.branch = branch
        super().__init__(message or f"failed to bracket root on branch n = {branch}")


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    ``achieved`` holds the error estimate actually reached.
    """

    def __init__(self, achieved: float, requested: float, message: str = ""):
        self.achieved = achieved
        self.requested = requested
        detail = message or "quadrature did not converge"
        super().__init__(
            f"{detail}: achieved tolerance {achieved:.3e}, requested {requested:.3e}"
        )


class ValidityWarning(UserWarning):
    """Parameters strain an approximation the model relies on."""
