"""Per-point extraction records."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping, NamedTuple

import numpy as np

from twopoint._typing import FloatArray
from twopoint.diff.config import DiffConfig
from twopoint.tensors import SymTensor

__all__ = ("ExtractionReport", "CheckResult")


class CheckResult(NamedTuple):
    """One measured value against its tolerance."""

    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value)) and self.value <= self.tolerance

    def to_record(self) -> dict[str, Any]:
        return {"check": self.name, "value": self.value, "tolerance": self.tolerance, "passed": self.passed}


@dataclass(frozen=True)
class ExtractionReport:
    point: FloatArray
    metric: SymTensor
    skewness: SymTensor
    q1: SymTensor
    q2: SymTensor
    gradient_residual: float
    sign_residuals: Mapping[str, float]
    config: DiffConfig
    rank4_scale: float = 0.0
    label: str = ""
    references: Mapping[str, float] = field(default_factory=dict)
    info_values: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.gradient_residual >= 0:
            raise ValueError(f"gradient_residual must be non-negative, got {self.gradient_residual}")
        for name, value in self.sign_residuals.items():
            if not value >= 0:
                raise ValueError(f"Residual {name!r} must be non-negative, got {value}")

    @property
    def metric_eigenvalues(self) -> tuple[float, float]:
        w = np.linalg.eigvalsh(self.metric.dense())
        return float(w[0]), float(w[-1])

    @property
    def q1_max(self) -> float:
        return self.q1.max_abs()

    @property
    def q2_max(self) -> float:
        return self.q2.max_abs()

    def scaled_rank4(self) -> tuple[float, float]:
        """max |Q1|, max |Q2| relative to the largest order-4 derivative."""
        scale = max(self.rank4_scale, np.finfo(np.float64).tiny)
        return self.q1_max / scale, self.q2_max / scale

    def with_references(self, **residuals: float) -> ExtractionReport:
        merged = {**self.references, **residuals}
        return replace(self, references=merged)

    def with_info(self, **values: float) -> ExtractionReport:
        merged = {**self.info_values, **values}
        return replace(self, info_values=merged)

    def checks(self, tolerances: Mapping[str, float]) -> list[CheckResult]:
        """Residuals that have a configured tolerance, in a stable order."""
        measured: dict[str, float] = {"gradient": self.gradient_residual}
        measured.update({f"{k}_sign": v for k, v in self.sign_residuals.items()})
        q1, q2 = self.scaled_rank4()
        measured["rank4"] = max(q1, q2)
        measured.update({f"{k}_reference": v for k, v in self.references.items()})
        return [CheckResult(name, value, tolerances[name]) for name, value in measured.items() if name in tolerances]

    def summary_row(self) -> dict[str, Any]:
        """Flat per-point row: coordinates, residuals, eigenvalue range of g, max |Q1| and max |Q2|."""
        lo, hi = self.metric_eigenvalues
        row: dict[str, Any] = {f"q{i}": float(c) for i, c in enumerate(self.point)}
        row["gradient_residual"] = self.gradient_residual
        row.update({f"{k}_sign_residual": v for k, v in self.sign_residuals.items()})
        row.update({f"{k}_reference_residual": v for k, v in self.references.items()})
        row.update({"g_eig_min": lo, "g_eig_max": hi, "q1_max": self.q1_max, "q2_max": self.q2_max})
        return row

    def to_record(self) -> dict[str, Any]:
        lo, hi = self.metric_eigenvalues
        return {
            "label": self.label,
            "point": [float(c) for c in self.point],
            "metric": self.metric.to_record(),
            "skewness": self.skewness.to_record(),
            "q1": self.q1.to_record(),
            "q2": self.q2.to_record(),
            "gradient_residual": self.gradient_residual,
            "sign_residuals": dict(self.sign_residuals),
            "metric_eigenvalue_range": [lo, hi],
            "rank4_scale": self.rank4_scale,
            "references": dict(self.references),
            "info": dict(self.info_values),
            "config": self.config.to_record(),
        }

    def info(self) -> str:
        from twopoint.analysis._display import Formatter

        return Formatter().format_report(self)
