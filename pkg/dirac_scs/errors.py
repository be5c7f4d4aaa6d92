"""Exception hierarchy for dirac-scs.

ValidationError subclasses map to exit status 1 and NumericalError subclasses
to exit status 2 (see cli._main).
"""

from typing import Optional


class ScsError(Exception):
    """Base class for all dirac-scs failures."""


class ValidationError(ScsError, ValueError):
    """Bad input, unmet precondition, or rejected configuration."""


class ConfigError(ValidationError):
    """Malformed key-value configuration text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(ValidationError):
    """Input outside the domain where a formula is defined."""


class NotOnShellError(DomainError):
    """Kinematic state violates its mass-shell condition."""

    def __init__(self, residual: float, form: str = ""):
        self.residual = residual
        where = f" for {form} form" if form else ""
        super().__init__(f"not on mass shell{where}: residual {residual:.3e}")


class NotAllowedError(DomainError):
    """Traveling-wave parameters outside the classically allowed window."""

    def __init__(self, r: float, reason: str = ""):
        self.r = r
        extra = f" ({reason})" if reason else ""
        super().__init__(f"not classically allowed: r = {r:.6g}{extra}")


class GridMismatchError(ValidationError):
    """Grids that must share a lattice have different shapes."""


class NumericalError(ScsError, RuntimeError):
    """NaN, divergence, non-convergence, or a failed numerical check."""


class ConvergenceError(NumericalError):
    """An iterative solve stopped before reaching its tolerance."""

    def __init__(self, message: str, best_residual: float):
        self.best_residual = best_residual
        super().__init__(f"{message}: best residual {best_residual:.3e}")


class DivergenceError(NumericalError):
    """Time stepping produced non-finite values."""

    def __init__(self, step: int):
        self.step = step
        super().__init__(f"non-finite field at step {step}")
