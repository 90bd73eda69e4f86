"""Differentiation settings."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Final, Literal, Mapping

import numpy as np

from twopoint._typing import FloatArray
from twopoint.errors import ConfigError

__all__ = ("DiffConfig", "DEFAULT_DIFF", "METHODS", "EPS")

EPS: Final[float] = float(np.finfo(np.float64).eps)

METHODS: Final[tuple[str, ...]] = ("taylor-jet", "finite-difference")

# Absolute tolerances per derivative order, before scaling by magnitude.
JET_TOLERANCES: Final[dict[int, float]] = {1: 1e-12, 2: 1e-11, 3: 1e-10, 4: 1e-9}
FD_TOLERANCES: Final[dict[int, float]] = {1: 1e-8, 2: 1e-6, 3: 1e-5, 4: 1e-3}

Method = Literal["taylor-jet", "finite-difference"]


@dataclass(frozen=True)
class DiffConfig:
    """
    How derivatives of two-point functions are computed.

    Args:
        method: ``"taylor-jet"`` for functions written against :mod:`twopoint.diff.ops`,
            ``"finite-difference"`` for black-box evaluators.
        base_step: FD step; ``None`` uses eps^(1/(k+2)) * max(1, |q|_inf) for order k.
        richardson_levels: number of step halvings combined by Richardson extrapolation.
        workers: stencil fan-out for reentrant functions; 1 evaluates serially.
        tolerances: per-order absolute tolerance overrides.
    """

    method: Method = "taylor-jet"
    base_step: float | None = None
    richardson_levels: int = 2
    workers: int = 1
    tolerances: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(f"Unknown differentiation method {self.method!r}", "method", self.method)
        if self.base_step is not None and not (np.isfinite(self.base_step) and self.base_step > 0):
            raise ConfigError("base_step must be positive", "base_step", self.base_step)
        if not 1 <= self.richardson_levels <= 4:
            raise ConfigError("richardson_levels must be in 1..4", "richardson_levels", self.richardson_levels)
        if self.workers < 1:
            raise ConfigError("workers must be at least 1", "workers", self.workers)
        for order, tol in self.tolerances.items():
            if order not in FD_TOLERANCES or not tol > 0:
                raise ConfigError(f"Invalid tolerance {tol!r} for order {order!r}", "tolerances", dict(self.tolerances))

    def step(self, order: int, q: FloatArray) -> float:
        if self.base_step is not None:
            return self.base_step
        scale = max(1.0, float(np.max(np.abs(q)))) if q.size else 1.0
        return EPS ** (1.0 / (order + 2)) * scale

    def tolerance(self, order: int, scale: float = 1.0) -> float:
        """Absolute tolerance for an order-k derivative of magnitude ``scale``."""
        base = self.tolerances.get(order)
        if base is None:
            table = JET_TOLERANCES if self.method == "taylor-jet" else FD_TOLERANCES
            base = table[order]
        return base * max(1.0, abs(scale))

    def replace(self, **changes: Any) -> DiffConfig:
        return dataclasses.replace(self, **changes)

    def to_record(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "base_step": self.base_step,
            "richardson_levels": self.richardson_levels,
            "workers": self.workers,
            "tolerances": {str(k): v for k, v in sorted(self.tolerances.items())},
        }

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> DiffConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown diff settings: {sorted(unknown)}", "diff", dict(data))
        kwargs = dict(data)
        if "tolerances" in kwargs:
            try:
                kwargs["tolerances"] = {int(k): float(v) for k, v in dict(kwargs["tolerances"]).items()}
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid diff tolerances: {e}", "tolerances", data["tolerances"]) from e
        return cls(**kwargs)


DEFAULT_DIFF = DiffConfig()
