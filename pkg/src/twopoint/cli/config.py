"""Run configuration for the command line."""
from __future__ import annotations

import dataclasses
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Final, Literal, Mapping, Optional

from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.errors import ConfigError
from twopoint.hj.settings import DEFAULT_SOLVER, SolverSettings

__all__ = (
    "RunConfig",
    "DEFAULT_TOLERANCES",
    "FD_TOLERANCES",
    "WORKERS_ENV",
    "default_workers",
    "load_config",
)

log = logging.getLogger(__name__)

WORKERS_ENV: Final = "TWOPOINT_WORKERS"

DEFAULT_TOLERANCES: Final[dict[str, float]] = {
    "gradient": 1e-6,
    "metric_sign": 1e-8,
    "skewness_sign": 1e-7,
    "rank4": 1e-3,
    "metric_reference": 1e-5,
    "skewness_reference": 1e-4,
    "metric_roundtrip": 1e-3,
    "skewness_roundtrip": 5e-3,
    "momenta": 1e-4,
}
"""Mapping of (check name): (tolerance) for the taylor-jet method."""

FD_TOLERANCES: Final[dict[str, float]] = {
    "gradient": 1e-5,
    "metric_sign": 1e-4,
    "skewness_sign": 1e-3,
    "rank4": 1e-2,
    "metric_reference": 1e-4,
    "skewness_reference": 1e-3,
}
"""Looser defaults applied when the method is finite-difference."""

Format = Literal["json", "csv"]
FORMATS: Final = ("json", "csv")


def default_workers() -> int:
    """Worker-pool size from the environment, else the processor count."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}", WORKERS_ENV, raw) from None
    if value < 1:
        raise ConfigError(f"{WORKERS_ENV} must be at least 1, got {value}", WORKERS_ENV, raw)
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a command needs; loaded from JSON, then overridden by flags.

    ``tolerances`` holds overrides only; :meth:`tolerance` resolves defaults by method.
    """

    model: str = ""
    points: str = "base"
    diff: DiffConfig = DEFAULT_DIFF
    solver: SolverSettings = DEFAULT_SOLVER
    alpha: float = 0.5
    quartic: float = 0.0
    tolerances: Mapping[str, float] = field(default_factory=dict)
    output: Optional[Path] = None
    format: Format = "json"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown output format {self.format!r}", "format", self.format)
        if self.workers < 1:
            raise ConfigError("workers must be at least 1", "workers", self.workers)
        for name, value in self.tolerances.items():
            if not (isinstance(value, (int, float)) and value > 0):
                raise ConfigError(f"Tolerance {name!r} must be positive, got {value!r}", f"tol.{name}", value)

    def tolerance(self, name: str) -> float:
        if name in self.tolerances:
            return float(self.tolerances[name])
        if "all" in self.tolerances:
            return float(self.tolerances["all"])
        if self.diff.method == "finite-difference" and name in FD_TOLERANCES:
            return FD_TOLERANCES[name]
        return DEFAULT_TOLERANCES.get(name, 1e-6)

    def resolved_tolerances(self) -> dict[str, float]:
        names = dict.fromkeys([*DEFAULT_TOLERANCES, *(k for k in self.tolerances if k != "all")])
        return {name: self.tolerance(name) for name in names}

    def replace(self, **changes: Any) -> RunConfig:
        return dataclasses.replace(self, **changes)

    def to_record(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "points": self.points,
            "diff": self.diff.to_record(),
            "solver": self.solver.to_record(),
            "alpha": self.alpha,
            "quartic": self.quartic,
            "tolerances": self.resolved_tolerances(),
            "output": str(self.output) if self.output is not None else None,
            "format": self.format,
        }

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> RunConfig:
        """
        Raises:
            ConfigError: unknown keys or invalid values.
        """
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {sorted(unknown)}", sorted(unknown)[0], None)
        kwargs = dict(data)
        if "diff" in kwargs:
            kwargs["diff"] = DiffConfig.from_mapping(kwargs["diff"])
        if "solver" in kwargs:
            kwargs["solver"] = SolverSettings.from_mapping(kwargs["solver"])
        if "tolerances" in kwargs:
            try:
                kwargs["tolerances"] = {str(k): float(v) for k, v in dict(kwargs["tolerances"]).items()}
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid tolerances: {e}", "tolerances", data["tolerances"]) from e
        if kwargs.get("output") is not None:
            kwargs["output"] = Path(kwargs["output"])
        for key in ("alpha", "quartic"):
            if key in kwargs:
                try:
                    kwargs[key] = float(kwargs[key])
                except (TypeError, ValueError):
                    raise ConfigError(f"{key} must be a number", key, kwargs[key]) from None
        try:
            return cls(**kwargs)
        except TypeError as e:
            raise ConfigError(f"Invalid configuration: {e}") from e


def load_config(path: Path | None) -> RunConfig:
    """Read a JSON run configuration; ``None`` gives the defaults."""
    if path is None:
        return RunConfig(workers=default_workers())
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found: {path}", "config", str(path)) from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"Configuration file {path} is not valid JSON: {e}", "config", str(path)) from e
    if not isinstance(data, dict):
        raise ConfigError("Configuration must be a JSON object", "config", str(path))
    data.setdefault("workers", default_workers())
    log.debug("Loaded configuration from %s", path)
    return RunConfig.from_mapping(data)
