"""Boundary-value solver settings."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from twopoint.errors import ConfigError

__all__ = ("SolverSettings", "DEFAULT_SOLVER")


@dataclass(frozen=True)
class SolverSettings:
    """
    Args:
        grid: number of integration steps N on [0, 1].
        tolerance: max-norm endpoint residual for convergence.
        max_iterations: endpoint-map evaluations allowed per shooting solve.
        trust_radius: largest |y - x| accepted for shooting.
        jacobian_step: forward-difference step; ``None`` uses sqrt(eps) * max(1, |v|_inf).
        polish: take one more Newton step after converging.
        memo: cache principal-function values by rounded (x, y).
    """

    grid: int = 200
    tolerance: float = 1e-12
    max_iterations: int = 30
    trust_radius: float = 0.5
    jacobian_step: float | None = None
    polish: bool = True
    memo: bool = False

    def __post_init__(self) -> None:
        if self.grid < 1:
            raise ConfigError("grid must be at least 1", "grid", self.grid)
        if not (np.isfinite(self.tolerance) and self.tolerance > 0):
            raise ConfigError("tolerance must be positive", "tolerance", self.tolerance)
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be at least 1", "max_iterations", self.max_iterations)
        if not self.trust_radius > 0:
            raise ConfigError("trust_radius must be positive", "trust_radius", self.trust_radius)
        if self.jacobian_step is not None and not self.jacobian_step > 0:
            raise ConfigError("jacobian_step must be positive", "jacobian_step", self.jacobian_step)

    def replace(self, **changes: Any) -> SolverSettings:
        return dataclasses.replace(self, **changes)

    def to_record(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> SolverSettings:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown solver settings: {sorted(unknown)}", "solver", dict(data))
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigError(f"Invalid solver settings: {e}", "solver", dict(data)) from e


DEFAULT_SOLVER = SolverSettings()
