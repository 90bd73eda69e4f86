"""Quadratic divergence S(x, y) = 1/2 (y - x)^T M (y - x)."""
from __future__ import annotations

import json
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt

from twopoint._typing import as_matrix
from twopoint.diff.function import TwoPointFunction
from twopoint.errors import DimensionError, DomainError, ModelError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.models.descriptor import Domain, ModelDescriptor

__all__ = ("quadratic_model", "parse_quadratic", "random_spd")

BOX = 10.0


def random_spd(n: int, seed: int = 0) -> npt.NDArray[np.float64]:
    """A well-conditioned random symmetric positive-definite matrix."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return a @ a.T / n + np.eye(n)


def quadratic_model(m: npt.ArrayLike, name: str | None = None) -> ModelDescriptor:
    """
    Raises:
        ModelError: M is not symmetric positive-definite.
    """
    try:
        mat = as_matrix(m)
    except (DimensionError, DomainError) as e:
        raise ModelError(f"Invalid quadratic matrix: {e}") from e
    if not np.allclose(mat, mat.T, rtol=0.0, atol=1e-12):
        raise ModelError("Quadratic matrix must be symmetric")
    try:
        np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        raise ModelError("Quadratic matrix must be positive-definite") from None
    mat = 0.5 * (mat + mat.T)
    n = mat.shape[0]
    entries = [(i, j, float(mat[i, j])) for i in range(n) for j in range(n) if mat[i, j] != 0.0]

    def s(x: Sequence[Any], y: Sequence[Any]) -> Any:
        d = [y[i] - x[i] for i in range(n)]
        total: Any = 0.0
        for i, j, w in entries:
            total = total + w * d[i] * d[j]
        return 0.5 * total

    label = name or f"quadratic:{n}"
    return ModelDescriptor(
        name=label,
        dim=n,
        domain=Domain("R^n", lambda q: True, np.full(n, -BOX), np.full(n, BOX)),
        base_point=np.zeros(n),
        potential=TwoPointFunction(n, s, label),
        metric=MetricField.constant(mat, label),
        skewness=SkewnessField.zero(n),
        references={"metric": lambda q: mat, "skewness": lambda q: np.zeros((n, n, n))},
    )


def parse_quadratic(spec: str) -> ModelDescriptor:
    """
    Build a quadratic model from a spec string.

    Accepted forms: ``identity[:n]``, ``diag:a,b,...``, ``random:n[:seed]``, or a JSON matrix.
    """
    name = f"quadratic:{spec}"
    head, _, rest = spec.partition(":")
    try:
        if head == "identity":
            return quadratic_model(np.eye(int(rest) if rest else 2), name)
        if head == "diag":
            return quadratic_model(np.diag([float(v) for v in rest.split(",")]), name)
        if head == "random":
            n, _, seed = rest.partition(":")
            return quadratic_model(random_spd(int(n), int(seed) if seed else 0), name)
        if spec.lstrip().startswith("["):
            return quadratic_model(json.loads(spec), name)
    except (ValueError, json.JSONDecodeError) as e:
        if isinstance(e, ModelError):
            raise
        raise ModelError(f"Invalid quadratic spec {spec!r}: {e}") from e
    raise ModelError(f"Unknown quadratic spec {spec!r}")
