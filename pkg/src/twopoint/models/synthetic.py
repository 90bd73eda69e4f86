"""Field-only models used as inverse-problem inputs."""
from __future__ import annotations

import numpy as np

from twopoint._typing import FloatArray
from twopoint.errors import ModelError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.models.descriptor import ModelDescriptor
from twopoint.models.kl import categorical_metric, categorical_metric_gradient, in_simplex, simplex_domain

__all__ = ("skewed_categorical", "skew_pattern")


def skew_pattern(n: int) -> FloatArray:
    """Fixed symmetric K_ijk = 1 / (1 + i + j + k)."""
    idx = np.arange(n)
    return 1.0 / (1.0 + idx[:, None, None] + idx[None, :, None] + idx[None, None, :])


def skewed_categorical(m: int) -> ModelDescriptor:
    """
    Categorical Fisher-Rao metric with T_ijk = 1/2 prod_a (1 + p_a) K_ijk.

    There is no potential; the fields are only an input to the principal function.

    Raises:
        ModelError: m < 2.
    """
    if m < 2:
        raise ModelError(f"Categorical model needs m >= 2, got {m}")
    n = m - 1
    k = skew_pattern(n)

    def skewness(q: FloatArray) -> FloatArray:
        return 0.5 * float(np.prod(1.0 + q)) * k

    def skewness_gradient(q: FloatArray) -> FloatArray:
        scale = 0.5 * float(np.prod(1.0 + q))
        return np.stack([scale / (1.0 + q[s]) * k for s in range(n)])

    return ModelDescriptor(
        name=f"skewed-categorical:{m}",
        dim=n,
        domain=simplex_domain(n),
        base_point=np.full(n, 1.0 / m),
        metric=MetricField(n, categorical_metric, f"fisher-rao:{m}", categorical_metric_gradient, in_simplex),
        skewness=SkewnessField(n, skewness, f"smooth-skewness:{m}", skewness_gradient, in_simplex),
        references={"metric": categorical_metric, "skewness": skewness},
    )
