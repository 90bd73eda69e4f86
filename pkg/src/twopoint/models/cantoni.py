"""Generalized transition probability on the punctured Hilbert space C^N = R^2N minus the origin."""
from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from twopoint._typing import FloatArray
from twopoint.diff.function import TwoPointFunction
from twopoint.errors import ModelError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.models.descriptor import Domain, ModelDescriptor

__all__ = (
    "cantoni_overlap",
    "displayed_metric",
    "pullback_metric",
    "radial_direction",
    "phase_direction",
    "to_unit_sphere",
)


def _split(q: FloatArray) -> tuple[FloatArray, FloatArray]:
    n = q.shape[0] // 2
    return q[:n], q[n:]


def radial_direction(q: FloatArray) -> FloatArray:
    """(x, y) -> (x, y): scaling of psi."""
    return np.asarray(q, dtype=np.float64).copy()


def phase_direction(q: FloatArray) -> FloatArray:
    """(x, y) -> (-y, x): multiplication of psi by i."""
    x, y = _split(np.asarray(q, dtype=np.float64))
    return np.concatenate([-y, x])


def pullback_metric(q: FloatArray) -> FloatArray:
    """-2 / R^2 (I - (u u^T + w w^T) / R^2) with u the radial and w the phase direction."""
    u = radial_direction(q)
    w = phase_direction(q)
    r2 = float(u @ u)
    proj = np.eye(u.shape[0]) - (np.outer(u, u) + np.outer(w, w)) / r2
    return -2.0 / r2 * proj


def displayed_metric(q: FloatArray) -> FloatArray:
    """
    The coordinate tensor as usually written for this overlap:

        sum 2 (x^j x^k + y^j y^k - delta_jk R^2) / R^4 (dx^j dx^k + dy^j dy^k)
      + sum (y^j x^k - y^k x^j) / R^4 (dx^j dy^k - dy^j dx^k)

    Its mixed block is -1/2 times the one of :func:`pullback_metric`.
    """
    x, y = _split(np.asarray(q, dtype=np.float64))
    n = x.shape[0]
    r2 = float(x @ x + y @ y)
    diag = 2.0 * (np.outer(x, x) + np.outer(y, y) - r2 * np.eye(n)) / r2**2
    mixed = (np.outer(y, x) - np.outer(x, y)) / r2**2
    return np.block([[diag, mixed], [-mixed, diag]])


def to_unit_sphere(q: FloatArray) -> FloatArray:
    norm = float(np.linalg.norm(q))
    if norm < 1e-8:
        out = np.zeros_like(q)
        out[0] = 1.0
        return out
    return q / norm


def _nonzero(q: FloatArray) -> bool:
    return bool(np.any(q != 0.0))


def cantoni_overlap(n_states: int) -> ModelDescriptor:
    """
    S(psi, phi) = |<psi|phi>|^2 / (|psi|^2 |phi|^2) with psi = sum (x^j + i y^j) e_j.

    Coordinates are (x^1 .. x^N, y^1 .. y^N). The generated metric is degenerate
    along the radial and phase directions, so the model is not invertible.

    Raises:
        ModelError: N < 2.
    """
    if n_states < 2:
        raise ModelError(f"Overlap model needs N >= 2, got {n_states}")
    n = 2 * n_states
    name = f"cantoni:{n_states}"

    def s(a: Sequence[Any], b: Sequence[Any]) -> Any:
        re: Any = 0.0
        im: Any = 0.0
        na: Any = 0.0
        nb: Any = 0.0
        for j in range(n_states):
            ax, ay = a[j], a[n_states + j]
            bx, by = b[j], b[n_states + j]
            re = re + ax * bx + ay * by
            im = im + ax * by - ay * bx
            na = na + ax * ax + ay * ay
            nb = nb + bx * bx + by * by
        return (re * re + im * im) / (na * nb)

    base = np.zeros(n)
    base[0] = 1.0
    return ModelDescriptor(
        name=name,
        dim=n,
        domain=Domain("R^2N minus the origin", _nonzero, np.full(n, -1.0), np.full(n, 1.0), to_unit_sphere),
        base_point=base,
        potential=TwoPointFunction(n, s, name, domain=_nonzero),
        metric=MetricField(n, pullback_metric, f"fubini-study-pullback:{n_states}", domain=_nonzero),
        skewness=SkewnessField.zero(n),
        references={"metric": pullback_metric, "displayed_metric": displayed_metric},
        invertible=False,
    )
