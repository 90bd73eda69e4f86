"""The extract, invert and verify commands, independent of the argument parser."""
from __future__ import annotations

import logging
from enum import IntEnum
from typing import Any, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from twopoint._typing import FloatArray
from twopoint.analysis import ExtractionReport, extract, extract_pair
from twopoint.cli.acceptance import VerifyContext, run_criteria
from twopoint.cli.config import RunConfig
from twopoint.cli.output import CheckRow, build_document
from twopoint.cli.runner import Outcome, run_points
from twopoint.cli.sampling import sample_points
from twopoint.errors import ConfigError, InconsistencyError, TwoPointError, UnsupportedError
from twopoint.geometry import Lagrangian, QuarticField
from twopoint.hj import hamilton_jacobi_residual, principal_function
from twopoint.models import model, reference_fields
from twopoint.models.descriptor import ModelDescriptor

__all__ = ("ExitCode", "CommandResult", "exit_code_for", "build_lagrangian", "cmd_extract", "cmd_invert", "cmd_verify")

log = logging.getLogger(__name__)

# Offset of the second point in the momenta check, per coordinate.
MOMENTA_OFFSET = 0.01


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    CONFIG_ERROR = 2
    DOMAIN_ERROR = 3


def exit_code_for(error: TwoPointError) -> ExitCode:
    if isinstance(error, ConfigError):
        return ExitCode.CONFIG_ERROR
    if isinstance(error, InconsistencyError):
        return ExitCode.CHECK_FAILED
    return ExitCode.DOMAIN_ERROR


class CommandResult(NamedTuple):
    document: dict[str, Any]
    rows: list[CheckRow]
    exit_code: ExitCode
    summary_rows: tuple[dict[str, Any], ...] = ()


def _relative(estimate: FloatArray, reference: FloatArray) -> float:
    scale = max(1.0, float(np.max(np.abs(reference))))
    return float(np.max(np.abs(estimate - reference))) / scale


def _resolve_model(config: RunConfig) -> ModelDescriptor:
    if not config.model:
        raise ConfigError("No model given; pass --model or set 'model' in the config file", "model", "")
    return model(config.model)


def _error_row(outcome: Outcome[Any]) -> CheckRow:
    err = outcome.error
    if isinstance(err, InconsistencyError):
        return CheckRow(outcome.index, outcome.point.tolist(), "inconsistency", err.residual, None, "FAIL")
    return CheckRow(outcome.index, outcome.point.tolist(), "error", float("nan"), None, "ERROR")


def _finish(
    command: str,
    config: RunConfig,
    outcomes: Sequence[Outcome[Any]],
    records: Iterable[dict[str, Any]],
    rows: list[CheckRow],
) -> CommandResult:
    errors = [o.error for o in outcomes if o.error is not None]
    failed = sum(1 for r in rows if r.status == "FAIL")
    code = ExitCode.OK
    if failed:
        code = ExitCode.CHECK_FAILED
    if errors:
        code = max(code, *(exit_code_for(e) for e in errors))
    summary = {
        "points": len(outcomes),
        "checks": len(rows),
        "failed": failed,
        "errors": len(errors) - sum(isinstance(e, InconsistencyError) for e in errors),
        "passed": code == ExitCode.OK,
        "exit_code": int(code),
    }
    log.info("%s: %d points, %d checks, %d failed", command, len(outcomes), len(rows), failed)
    return CommandResult(build_document(command, config, records, summary), rows, ExitCode(code))


def _check_rows(index: int, point: FloatArray, checks: Iterable[tuple[str, float, float]]) -> list[CheckRow]:
    out = []
    for name, value, tol in checks:
        status = "PASS" if np.isfinite(value) and value <= tol else "FAIL"
        out.append(CheckRow(index, point.tolist(), name, float(value), tol, status))
    return out


def _with_references(report: ExtractionReport, m: ModelDescriptor) -> ExtractionReport:
    """Reference residuals for metric and skewness; any other reference is informational."""
    extracted = {"metric": report.metric.dense(), "skewness": report.skewness.dense()}
    checked, info = {}, {}
    for name in m.references:
        ref = m.reference(name, report.point)
        if name in extracted:
            checked[name] = _relative(extracted[name], ref)
        else:
            target = extracted["metric"] if ref.ndim == 2 else extracted["skewness"]
            info[f"{name}_residual"] = _relative(target, ref)
    return report.with_references(**checked).with_info(**info)


def cmd_extract(config: RunConfig) -> CommandResult:
    """
    Extract g, T and the rank-4 combinations at every configured point.

    Raises:
        ConfigError: no model or a malformed point spec.
        UnsupportedError: the model has no potential.
    """
    m = _resolve_model(config)
    s = m.require_potential()
    points = sample_points(config.points, m)
    tolerances = config.resolved_tolerances()

    def run(q: FloatArray) -> ExtractionReport:
        report = extract(s, q, config.diff, gradient_tol=config.tolerance("gradient"))
        return _with_references(report, m)

    outcomes = run_points(run, points, config.workers)
    records, rows, summaries = [], [], []
    for o in outcomes:
        if o.value is None:
            rows.append(_error_row(o))
            records.append({"point": o.point.tolist(), "error": str(o.error), "error_type": type(o.error).__name__})
            continue
        checks = o.value.checks(tolerances)
        rows.extend(_check_rows(o.index, o.point, ((c.name, c.value, c.tolerance) for c in checks)))
        records.append(o.value.to_record())
        summaries.append({"point_index": o.index, **o.value.summary_row()})
    result = _finish("extract", config, outcomes, records, rows)
    return result._replace(summary_rows=tuple(summaries))


class Inversion(NamedTuple):
    point: FloatArray
    metric: FloatArray
    skewness: FloatArray
    metric_reference: FloatArray
    skewness_expected: FloatArray
    metric_error: float
    skewness_error: float
    momenta_residual: float

    def to_record(self) -> dict[str, Any]:
        return {
            "point": self.point.tolist(),
            "metric": self.metric.tolist(),
            "metric_reference": self.metric_reference.tolist(),
            "skewness": self.skewness.tolist(),
            "skewness_expected": self.skewness_expected.tolist(),
            "metric_error": self.metric_error,
            "skewness_error": self.skewness_error,
            "momenta_residual": self.momenta_residual,
        }


def build_lagrangian(m: ModelDescriptor, config: RunConfig) -> Lagrangian:
    """
    Lagrangian from the model's reference fields, alpha and the optional constant quartic.

    Raises:
        UnsupportedError: the model has no reference fields or is not invertible.
    """
    if not m.invertible:
        raise UnsupportedError(f"Model {m.name!r} does not support the inverse problem")
    g, t = reference_fields(m)
    c = QuarticField.uniform(m.dim, config.quartic) if config.quartic else None
    return Lagrangian(g, t, c, alpha=config.alpha)


def cmd_invert(config: RunConfig) -> CommandResult:
    """
    Build the principal function of the model's (g, T) and re-extract both at every point.

    The expected skewness is 2 alpha T; the momenta residual is taken at (q, q + 0.01).
    """
    m = _resolve_model(config)
    L = build_lagrangian(m, config)
    pf = principal_function(L, config.solver)
    cfg = config.diff.replace(method="finite-difference")
    points = sample_points(config.points, m)

    def run(q: FloatArray) -> Inversion:
        pair = extract_pair(pf, q, cfg)
        g_ref = L.g.dense(q)
        t_exp = 2.0 * config.alpha * L.skewness.dense(q)
        g_est, t_est = pair.metric.dense(), pair.skewness.dense()
        y = q + MOMENTA_OFFSET / np.sqrt(m.dim)
        return Inversion(
            q,
            g_est,
            t_est,
            g_ref,
            t_exp,
            _relative(g_est, g_ref),
            _relative(t_est, t_exp),
            hamilton_jacobi_residual(pf, q, y),
        )

    outcomes = run_points(run, points, config.workers)
    records, rows = [], []
    for o in outcomes:
        if o.value is None:
            rows.append(_error_row(o))
            records.append({"point": o.point.tolist(), "error": str(o.error), "error_type": type(o.error).__name__})
            continue
        inv = o.value
        rows.extend(
            _check_rows(
                o.index,
                o.point,
                (
                    ("metric_roundtrip", inv.metric_error, config.tolerance("metric_roundtrip")),
                    ("skewness_roundtrip", inv.skewness_error, config.tolerance("skewness_roundtrip")),
                    ("momenta", inv.momenta_residual, config.tolerance("momenta")),
                ),
            )
        )
        records.append(inv.to_record())
    result = _finish("invert", config, outcomes, records, rows)
    result.document["summary"]["bvp_failures"] = sum(1 for o in outcomes if not o.ok)
    return result


def cmd_verify(config: RunConfig, only: Optional[Sequence[str]] = None) -> CommandResult:
    """
    Run the acceptance criteria; XFAIL, XPASS and INFO rows are reported but not counted.

    Raises:
        ConfigError: unknown criterion in ``only``.
    """
    results = run_criteria(VerifyContext(config), only)
    rows: list[CheckRow] = []
    records = []
    errors = []
    discrepancies = []
    for i, res in enumerate(results):
        key = res.criterion.key
        for meas in res.measurements:
            rows.append(CheckRow(i, [], f"{key}.{meas.name}", meas.value, meas.upper, meas.status))
            if meas.expected_failure:
                discrepancies.append(
                    {"check": f"{key}.{meas.name}", "status": meas.status, "value": meas.value, **(meas.details or {})}
                )
        if res.error is not None:
            errors.append(res.error)
            rows.append(CheckRow(i, [], f"{key}.error", float("nan"), None, "ERROR"))
        records.append(
            {
                "criterion": key,
                "title": res.criterion.title,
                "measurements": [
                    {"name": m.name, "value": m.value, "bound": m.bound, "status": m.status, "details": m.details}
                    for m in res.measurements
                ],
                "error": None if res.error is None else str(res.error),
            }
        )
    failed = sum(1 for r in rows if r.status == "FAIL")
    code = ExitCode.CHECK_FAILED if failed else ExitCode.OK
    if errors:
        code = max(code, *(exit_code_for(e) for e in errors))
    summary = {
        "criteria": len(results),
        "checks": sum(1 for r in rows if r.status in ("PASS", "FAIL")),
        "failed": failed,
        "expected_failures": sum(1 for r in rows if r.status == "XFAIL"),
        "discrepancies": discrepancies,
        "errors": len(errors),
        "passed": code == ExitCode.OK,
        "exit_code": int(code),
    }
    return CommandResult(build_document("verify", config, records, summary), rows, ExitCode(code))

