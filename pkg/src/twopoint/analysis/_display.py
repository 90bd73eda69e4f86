"""Formatted info for extraction reports."""
from __future__ import annotations

from string import Template
from typing import TYPE_CHECKING, Any

import numpy as np

from twopoint.tensors import SymTensor

if TYPE_CHECKING:
    from twopoint.analysis.report import ExtractionReport

BASE = Template("$label (at $point):")
INDENTS_COUNT = 3
INDENTS = " " * INDENTS_COUNT


def indent(s: str) -> str:
    """Indent a string."""
    if "\n" not in s:
        return INDENTS + s
    return "\n".join(INDENTS + line for line in s.splitlines())


class Formatter:
    def __init__(self, precision: int = 6, arr_max: int | None = 12):
        """
        Initialize a Formatter.

        Args:
            precision: Significant digits for floats.
            arr_max: The max number of tensor components to show.
        """
        self.precision = precision
        self.arr_max = arr_max

    def format_value(self, obj: Any) -> str:
        if isinstance(obj, SymTensor):
            return self.format_tensor(obj)
        if isinstance(obj, (float, np.floating)):
            return f"{float(obj):.{self.precision}g}"
        if isinstance(obj, np.ndarray):
            return "[" + ", ".join(self.format_value(v) for v in obj.ravel()) + "]"
        if isinstance(obj, dict):
            return "{" + ", ".join(f"{k}: {self.format_value(v)}" for k, v in obj.items()) + "}"
        return repr(obj)

    def format_tensor(self, t: SymTensor) -> str:
        items = list(zip(t.indices, t.values))
        extra = 0
        if self.arr_max is not None and len(items) > self.arr_max:
            extra = len(items) - self.arr_max
            items = items[: self.arr_max]
        parts = [f"{''.join(map(str, idx))}={self.format_value(v)}" for idx, v in items]
        tail = f", ... (+{extra})" if extra else ""
        return f"rank {t.rank} [{', '.join(parts)}{tail}]"

    def format_report(self, report: ExtractionReport) -> str:
        header = BASE.substitute(label=report.label or "S", point=self.format_value(report.point))
        q1, q2 = report.scaled_rank4()
        fields = {
            "metric": report.metric,
            "metric_eigenvalue_range": np.array(report.metric_eigenvalues),
            "skewness": report.skewness,
            "q1": report.q1,
            "q2": report.q2,
            "q1_scaled": q1,
            "q2_scaled": q2,
            "gradient_residual": report.gradient_residual,
            "sign_residuals": dict(report.sign_residuals),
        }
        if report.references:
            fields["references"] = dict(report.references)
        if report.info_values:
            fields["info"] = dict(report.info_values)
        fields["method"] = report.config.method
        lines = [f"{name}: {self.format_value(value)}" for name, value in fields.items()]
        return "\n".join([header, *map(indent, lines)])
