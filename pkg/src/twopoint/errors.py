from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from twopoint.hj.integrate import Trajectory


class TwoPointError(Exception):
    """Base class for all twopoint errors."""


class DimensionError(TwoPointError, IndexError):
    """Shape, rank or index does not match the chart dimension."""


class SymmetryError(TwoPointError, ValueError):
    """Matrix is not symmetric where symmetry is required."""


class SingularityError(TwoPointError, ArithmeticError):
    """Matrix is singular or too ill-conditioned to invert."""

    def __init__(self, message: str, condition: float = float("inf")) -> None:
        super().__init__(message)
        self.condition = condition


class RegularityError(SingularityError):
    """Velocity Hessian of a Lagrangian is singular at (q, v)."""

    def __init__(
        self,
        message: str,
        condition: float = float("inf"),
        velocity_norm: float = float("nan"),
        trajectory: Trajectory | None = None,
    ) -> None:
        super().__init__(message, condition)
        self.velocity_norm = velocity_norm
        self.trajectory = trajectory


class DomainError(TwoPointError, ValueError):
    """Evaluation outside the declared domain, or a non-finite value."""


class InconsistencyError(TwoPointError):
    """Estimates that must agree up to sign disagree beyond tolerance."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class BVPError(TwoPointError):
    """Boundary-value problem did not converge."""

    def __init__(self, message: str, best_residual: float = float("nan"), iterations: int = 0) -> None:
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class UnsupportedError(TwoPointError, NotImplementedError):
    """Operation is not available for this input."""


class ModelError(TwoPointError, ValueError):
    """Invalid model construction arguments."""


class ConfigError(TwoPointError, ValueError):
    """Invalid configuration value."""

    def __init__(self, message: str, key: str | None = None, value: Any = None) -> None:
        super().__init__(message)
        self.key = key
        self.value = value


class AccuracyWarning(UserWarning):
    """Derivative estimate did not reach the requested accuracy."""
