"""Polynomial-in-velocity Lagrangians built from (g, T, C)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from twopoint._typing import FloatArray, Matrix, PointLike, as_point
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.errors import ConfigError, DimensionError
from twopoint.geometry.fields import MetricField, QuarticField, SkewnessField

__all__ = (
    "Lagrangian",
    "Coefficients",
    "LocalCoefficients",
    "lagrangian_value",
    "momentum",
    "velocity_hessian",
)

log = logging.getLogger(__name__)


class Coefficients(NamedTuple):
    """Dense g, T, C at a point; T and C are zero arrays when absent."""

    g: Matrix
    t: FloatArray
    c: FloatArray


class LocalCoefficients(NamedTuple):
    """Coefficients and their first derivatives, d[k, ...] = d / d q^k."""

    g: Matrix
    dg: FloatArray
    t: FloatArray
    dt: FloatArray
    c: FloatArray
    dc: FloatArray


@dataclass(frozen=True)
class Lagrangian:
    """
    L(q, v) = 1/2 g_ij v^i v^j + alpha/6 T_ijk v^i v^j v^k + 1/24 C_ijkl v^i v^j v^k v^l.

    ``t`` and ``c`` default to zero fields.
    """

    g: MetricField
    t: Optional[SkewnessField] = None
    c: Optional[QuarticField] = None
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if not np.isfinite(self.alpha):
            raise ConfigError(f"alpha must be finite, got {self.alpha}", "alpha", self.alpha)
        for name in ("t", "c"):
            f = getattr(self, name)
            if f is not None and f.dim != self.g.dim:
                raise DimensionError(f"{name} has dimension {f.dim}, metric has {self.g.dim}")

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def skewness(self) -> SkewnessField:
        return self.t if self.t is not None else SkewnessField.zero(self.dim)

    @property
    def quartic(self) -> QuarticField:
        return self.c if self.c is not None else QuarticField.zero(self.dim)

    @property
    def is_cubic(self) -> bool:
        return self.c is None or self.c.is_zero()

    @property
    def label(self) -> str:
        parts = [self.g.label]
        if self.t is not None:
            parts.append(self.t.label)
        if self.c is not None:
            parts.append(self.c.label)
        return f"L[{', '.join(parts)}; alpha={self.alpha:g}]"

    def contains(self, q: FloatArray) -> bool:
        return self.g.contains(q)

    def coefficients(self, q: PointLike) -> Coefficients:
        qa = as_point(q, self.dim)
        n = self.dim
        t = self.t.dense(qa) if self.t is not None else np.zeros((n,) * 3)
        c = self.c.dense(qa) if self.c is not None else np.zeros((n,) * 4)
        return Coefficients(self.g.dense(qa), t, c)

    def local(self, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> LocalCoefficients:
        qa = as_point(q, self.dim)
        n = self.dim
        g, t, c = self.coefficients(qa)
        dt = self.t.gradient(qa, cfg) if self.t is not None else np.zeros((n,) * 4)
        dc = self.c.gradient(qa, cfg) if self.c is not None else np.zeros((n,) * 5)
        return LocalCoefficients(g, self.g.gradient(qa, cfg), t, dt, c, dc)

    def with_alpha(self, alpha: float) -> Lagrangian:
        return Lagrangian(self.g, self.t, self.c, alpha)


def _velocity(L: Lagrangian, v: PointLike) -> FloatArray:
    va = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if va.shape != (L.dim,):
        raise DimensionError(f"Velocity has shape {va.shape}, expected ({L.dim},)")
    return va


def lagrangian_value(L: Lagrangian, q: PointLike, v: PointLike) -> float:
    """
    Examples:
        >>> L = Lagrangian(MetricField.constant(np.eye(2)))
        >>> lagrangian_value(L, [0.0, 0.0], [3.0, 4.0])
        12.5
    """
    g, t, c = L.coefficients(q)
    va = _velocity(L, v)
    quad = va @ g @ va
    cubic = np.einsum("ijk,i,j,k->", t, va, va, va)
    quartic = np.einsum("ijkl,i,j,k,l->", c, va, va, va, va)
    return float(0.5 * quad + L.alpha / 6.0 * cubic + quartic / 24.0)


def momentum(L: Lagrangian, q: PointLike, v: PointLike) -> FloatArray:
    """p_i = dL/dv^i = g_ij v^j + alpha/2 T_ijk v^j v^k + 1/6 C_ijkl v^j v^k v^l."""
    g, t, c = L.coefficients(q)
    va = _velocity(L, v)
    cubic = np.einsum("ijk,j,k->i", t, va, va)
    quartic = np.einsum("ijkl,j,k,l->i", c, va, va, va)
    return g @ va + 0.5 * L.alpha * cubic + quartic / 6.0


def velocity_hessian(L: Lagrangian, q: PointLike, v: PointLike) -> Matrix:
    """M_ij = d^2 L / dv^i dv^j = g_ij + alpha T_ijk v^k + 1/2 C_ijkl v^k v^l."""
    g, t, c = L.coefficients(q)
    va = _velocity(L, v)
    return g + L.alpha * np.einsum("ijk,k->ij", t, va) + 0.5 * np.einsum("ijkl,k,l->ij", c, va, va)
