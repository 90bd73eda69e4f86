"""Kullback-Leibler divergences on Bernoulli and categorical families."""
from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from twopoint._typing import FloatArray
from twopoint.diff import ops
from twopoint.diff.function import TwoPointFunction
from twopoint.errors import ModelError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.models.descriptor import Domain, ModelDescriptor

__all__ = (
    "kl_bernoulli",
    "kl_bernoulli_logit",
    "kl_categorical",
    "categorical_metric",
    "categorical_metric_gradient",
    "categorical_skewness",
    "categorical_skewness_gradient",
    "in_simplex",
    "simplex_domain",
    "MARGIN",
    "LOGIT_BOUND",
)

# Sampling keeps every probability, including p_0, at least this far from zero.
MARGIN = 0.05
LOGIT_BOUND = 10.0


def _p0(q: FloatArray) -> float:
    return 1.0 - float(np.sum(q))


def in_simplex(q: FloatArray) -> bool:
    """Open simplex interior in the first-(m-1)-probabilities chart."""
    return bool(np.all(q > 0.0) and _p0(q) > 0.0)


def categorical_metric(q: FloatArray) -> FloatArray:
    """g_ij = delta_ij / p_i + 1 / p_0."""
    return np.diag(1.0 / q) + 1.0 / _p0(q)


def categorical_metric_gradient(q: FloatArray) -> FloatArray:
    n = q.shape[0]
    out = np.full((n, n, n), 1.0 / _p0(q) ** 2)
    for k in range(n):
        out[k, k, k] -= 1.0 / q[k] ** 2
    return out


def categorical_skewness(q: FloatArray) -> FloatArray:
    """T_ijk = -delta_ijk / p_i^2 + 1 / p_0^2, the skewness generated by KL(x || y).

    In this chart it coincides with d_k g_ij.
    """
    return categorical_metric_gradient(q)


def categorical_skewness_gradient(q: FloatArray) -> FloatArray:
    n = q.shape[0]
    out = np.full((n, n, n, n), 2.0 / _p0(q) ** 3)
    for k in range(n):
        out[k, k, k, k] += 2.0 / q[k] ** 3
    return out


def _kl(x: Sequence[Any], y: Sequence[Any]) -> Any:
    n = len(x)
    x0: Any = 1.0
    y0: Any = 1.0
    for i in range(n):
        x0 = x0 - x[i]
        y0 = y0 - y[i]
    total = x0 * (ops.log(x0) - ops.log(y0))
    for i in range(n):
        total = total + x[i] * (ops.log(x[i]) - ops.log(y[i]))
    return total


def simplex_domain(n: int) -> Domain:
    return Domain(
        f"open {n + 1}-simplex interior",
        in_simplex,
        np.full(n, MARGIN),
        np.full(n, (1.0 - MARGIN) / n),
    )


def kl_categorical(m: int) -> ModelDescriptor:
    """
    S(x, y) = sum_a x_a log(x_a / y_a) on m outcomes, charted by p_1 .. p_{m-1}.

    Raises:
        ModelError: m < 2.
    """
    if m < 2:
        raise ModelError(f"Categorical model needs m >= 2, got {m}")
    n = m - 1
    name = f"kl-categorical:{m}"
    metric = MetricField(n, categorical_metric, f"fisher-rao:{m}", categorical_metric_gradient, in_simplex)
    skewness = SkewnessField(n, categorical_skewness, f"kl-skewness:{m}", categorical_skewness_gradient, in_simplex)
    return ModelDescriptor(
        name=name,
        dim=n,
        domain=simplex_domain(n),
        base_point=np.full(n, 1.0 / m),
        potential=TwoPointFunction(n, _kl, name, domain=in_simplex),
        metric=metric,
        skewness=skewness,
        references={"metric": categorical_metric, "skewness": categorical_skewness},
    )


def kl_bernoulli() -> ModelDescriptor:
    """
    S(p, q) = p log(p / q) + (1 - p) log((1 - p) / (1 - q)) on (0, 1).

    Examples:
        >>> round(kl_bernoulli().potential([0.5], [0.25]), 5)
        0.14384
    """
    model = kl_categorical(2)
    name = "kl-bernoulli"
    return ModelDescriptor(
        name=name,
        dim=1,
        domain=Domain("(0, 1)", in_simplex, np.array([MARGIN]), np.array([1.0 - MARGIN])),
        base_point=np.array([0.5]),
        potential=TwoPointFunction(1, _kl, name, domain=in_simplex),
        metric=model.metric,
        skewness=model.skewness,
        references=model.references,
    )


def _sigmoid(t: Any) -> Any:
    return 1.0 / (1.0 + ops.exp(-t))


def _logit_p(q: FloatArray) -> FloatArray:
    return 1.0 / (1.0 + np.exp(-q))


def _logit_metric(q: FloatArray) -> FloatArray:
    p = _logit_p(q)
    return (p * (1.0 - p)).reshape(1, 1)


def _logit_metric_gradient(q: FloatArray) -> FloatArray:
    p = _logit_p(q)
    return (p * (1.0 - p) * (1.0 - 2.0 * p)).reshape(1, 1, 1)


def _logit_skewness(q: FloatArray) -> FloatArray:
    p = _logit_p(q)
    return (p * (1.0 - p) * (2.0 * p - 1.0)).reshape(1, 1, 1)


def _logit_skewness_gradient(q: FloatArray) -> FloatArray:
    p = _logit_p(q)
    return (p * (1.0 - p) * (-6.0 * p**2 + 6.0 * p - 1.0)).reshape(1, 1, 1, 1)


def _in_logit_range(q: FloatArray) -> bool:
    return bool(np.all(np.abs(q) < LOGIT_BOUND))


def kl_bernoulli_logit() -> ModelDescriptor:
    """Bernoulli KL in the chart theta = log(p / (1 - p)); g_theta = p (1 - p)."""
    name = "kl-bernoulli-logit"

    def s(x: Sequence[Any], y: Sequence[Any]) -> Any:
        return _kl([_sigmoid(x[0])], [_sigmoid(y[0])])

    return ModelDescriptor(
        name=name,
        dim=1,
        domain=Domain("|theta| < 10", _in_logit_range, np.array([-3.0]), np.array([3.0])),
        base_point=np.array([0.0]),
        potential=TwoPointFunction(1, s, name, domain=_in_logit_range),
        metric=MetricField(1, _logit_metric, "fisher-rao-logit", _logit_metric_gradient, _in_logit_range),
        skewness=SkewnessField(1, _logit_skewness, "kl-skewness-logit", _logit_skewness_gradient, _in_logit_range),
        references={"metric": _logit_metric, "skewness": _logit_skewness},
    )
