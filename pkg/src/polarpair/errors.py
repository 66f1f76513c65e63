"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A run configuration or parameter set is invalid or incomplete."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to reach its stated tolerance.

    Carries the best result obtained so far in ``best`` (may be None) and a
    ``residual`` estimate, so sweeps can record the failure and continue.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class DegenerateDressingWarning(UserWarning):
    """Two-level dressing evaluated at zero detuning (expansion invalid)."""
