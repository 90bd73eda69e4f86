"""Potential checks and tensor extraction from diagonal derivatives."""
from __future__ import annotations

import logging
from typing import NamedTuple, Optional

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.analysis.report import ExtractionReport
from twopoint.analysis.signs import METRIC_SIGNS, Q1_TERMS, Q2_TERMS, SKEWNESS_SIGNS
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.engine import DerivativeTable, derivative_table, diagonal_gradient
from twopoint.diff.function import TwoPointFunction
from twopoint.diff.patterns import swap_marks
from twopoint.errors import InconsistencyError
from twopoint.tensors import SymTensor, symmetrize

__all__ = (
    "PotentialCheck",
    "MetricExtraction",
    "SkewnessExtraction",
    "Rank4Extraction",
    "SignTable",
    "check_potential",
    "extract_metric",
    "extract_skewness",
    "extract_rank4",
    "sign_table",
    "extract",
    "extract_pair",
    "TensorPair",
    "INCONSISTENCY_FACTOR",
)

log = logging.getLogger(__name__)

INCONSISTENCY_FACTOR = 100.0


class PotentialCheck(NamedTuple):
    passed: bool
    residual: float
    gradient: FloatArray


class MetricExtraction(NamedTuple):
    tensor: SymTensor
    residual: float
    estimates: dict[str, SymTensor]


class SkewnessExtraction(NamedTuple):
    tensor: SymTensor
    residual: float
    estimates: dict[str, SymTensor]
    asymmetry: float


class Rank4Extraction(NamedTuple):
    q1: SymTensor
    q2: SymTensor
    scale: float


class SignTable(NamedTuple):
    """Signed combinations of diagonal derivatives and their agreement."""

    order2: dict[str, SymTensor]
    order3: dict[str, SymTensor]
    residual2: float
    residual3: float
    empirical_signs: dict[str, int]


def check_potential(
    s: TwoPointFunction,
    q: PointLike,
    tol: float,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> PotentialCheck:
    """Pass iff every first partial at (q, q) is within ``tol``."""
    grad = diagonal_gradient(s, q, cfg)
    residual = float(np.max(np.abs(grad)))
    return PotentialCheck(residual <= tol, residual, grad)


def _table(s: TwoPointFunction, q: PointLike, order: int, cfg: DiffConfig, table: Optional[DerivativeTable]):
    if table is not None and table.max_order >= order:
        return table
    return derivative_table(s, q, order, cfg)


def _raise_if_inconsistent(kind: str, residual: float, tol: float) -> None:
    if residual > INCONSISTENCY_FACTOR * tol:
        raise InconsistencyError(
            f"{kind} estimates disagree by {residual:.3e} (tolerance {tol:.3e}); "
            "input is not a potential or its derivatives are unreliable",
            residual,
        )


def _signed_order2(table: DerivativeTable) -> dict[str, SymTensor]:
    return {marks: symmetrize(sign * table.dense(marks)) for marks, sign in METRIC_SIGNS.items()}


def _signed_order3(table: DerivativeTable) -> dict[str, SymTensor]:
    out = {}
    for marks, sign in SKEWNESS_SIGNS.items():
        diff = table.dense(marks) - table.dense(swap_marks(marks))
        out[marks] = symmetrize(sign * diff)
    return out


def _max_deviation(estimates: dict[str, SymTensor], primary: SymTensor) -> float:
    return max((est - primary).max_abs() for est in estimates.values())


def extract_metric(
    s: TwoPointFunction,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    table: Optional[DerivativeTable] = None,
) -> MetricExtraction:
    """
    g_jk = -d^2 S / dx^j dy^k at (q, q), symmetrized.

    The residual is the largest deviation of the LL, RR, -LR, -RL estimates from g.

    Raises:
        InconsistencyError: residual above 100x the order-2 tolerance.
    """
    table = _table(s, q, 2, cfg, table)
    estimates = _signed_order2(table)
    metric = symmetrize(-table.dense("LR"))
    residual = _max_deviation(estimates, metric)
    _raise_if_inconsistent("Metric", residual, cfg.tolerance(2, metric.max_abs()))
    return MetricExtraction(metric, residual, estimates)


def extract_skewness(
    s: TwoPointFunction,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    table: Optional[DerivativeTable] = None,
) -> SkewnessExtraction:
    """
    T_ijk = d^3 S / dx^i dx^j dy^k - d^3 S / dy^i dy^j dx^k at (q, q), symmetrized.

    The residual compares all eight order-3 combinations with T through
    :data:`~twopoint.analysis.signs.SKEWNESS_SIGNS`; ``asymmetry`` is how far the
    raw combination is from being symmetric before averaging.

    Raises:
        InconsistencyError: residual above 100x the order-3 tolerance.
    """
    table = _table(s, q, 3, cfg, table)
    raw = table.dense("LLR") - table.dense("RRL")
    skewness = symmetrize(raw)
    asymmetry = float(np.max(np.abs(raw - skewness.dense())))
    estimates = _signed_order3(table)
    residual = _max_deviation(estimates, skewness)
    _raise_if_inconsistent("Skewness", residual, cfg.tolerance(3, table.order_scale(3)))
    return SkewnessExtraction(skewness, residual, estimates, asymmetry)


def extract_rank4(
    s: TwoPointFunction,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    table: Optional[DerivativeTable] = None,
) -> Rank4Extraction:
    """Symmetrized Q1 and Q2, with the largest order-4 derivative magnitude as scale."""
    table = _table(s, q, 4, cfg, table)

    def combine(terms: tuple[tuple[str, str], ...]) -> SymTensor:
        total = sum(table.dense(a) - table.dense(b) for a, b in terms)
        return symmetrize(total)

    return Rank4Extraction(combine(Q1_TERMS), combine(Q2_TERMS), table.order_scale(4))


def sign_table(
    s: TwoPointFunction,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    table: Optional[DerivativeTable] = None,
) -> SignTable:
    """
    Order-2 and order-3 sign report.

    Disagreements are reported as residuals, never raised. The empirical sign of
    an order-3 combination is the sign of its projection on T; it is 0 when T
    is below tolerance and the sign cannot be measured.
    """
    table = _table(s, q, 3, cfg, table)
    order2 = _signed_order2(table)
    metric = symmetrize(-table.dense("LR"))
    residual2 = _max_deviation(order2, metric)

    skewness = symmetrize(table.dense("LLR") - table.dense("RRL"))
    order3 = _signed_order3(table)
    residual3 = _max_deviation(order3, skewness)

    tol = cfg.tolerance(3, table.order_scale(3))
    norm = float(skewness.values @ skewness.values)
    empirical = {}
    for marks in SKEWNESS_SIGNS:
        raw = (table.dense(marks) - table.dense(swap_marks(marks))).ravel()
        projection = float(raw @ skewness.dense().ravel())
        empirical[marks] = 0 if skewness.max_abs() <= tol or norm == 0.0 else int(np.sign(projection))
    return SignTable(order2, order3, residual2, residual3, empirical)


def extract(
    s: TwoPointFunction,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    gradient_tol: float = 1e-6,
) -> ExtractionReport:
    """Full per-point extraction from a single order-4 derivative table."""
    qa = as_point(q, s.dim)
    check = check_potential(s, qa, gradient_tol, cfg)
    if not check.passed:
        log.warning("%s fails the potential check at %s (residual %.3e)", s.label, qa.tolist(), check.residual)
    table = derivative_table(s, qa, 4, cfg)
    metric = extract_metric(s, qa, cfg, table)
    skewness = extract_skewness(s, qa, cfg, table)
    rank4 = extract_rank4(s, qa, cfg, table)
    return ExtractionReport(
        point=qa,
        metric=metric.tensor,
        skewness=skewness.tensor,
        q1=rank4.q1,
        q2=rank4.q2,
        gradient_residual=check.residual,
        sign_residuals={"metric": metric.residual, "skewness": skewness.residual},
        config=cfg,
        rank4_scale=rank4.scale,
        label=s.label,
        info_values={"skewness_asymmetry": skewness.asymmetry},
    )


class TensorPair(NamedTuple):
    metric: SymTensor
    skewness: SymTensor


def extract_pair(s: TwoPointFunction, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> TensorPair:
    """g and T from the LR, LLR and RRL entries alone, without sign cross-checks."""
    table = derivative_table(s, q, 3, cfg, marks=("LR", "LLR", "RRL"))
    return TensorPair(
        symmetrize(-table.dense("LR")),
        symmetrize(table.dense("LLR") - table.dense("RRL")),
    )
