"""Point-dependent metric, skewness and quartic tensor fields on a chart."""
from __future__ import annotations

import logging
from typing import Callable, ClassVar, Optional

import numpy as np
import numpy.typing as npt
from typing_extensions import Self

from twopoint._typing import FloatArray, Matrix, PointLike, as_matrix, as_point
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.fd import field_gradient
from twopoint.diff.function import DomainPredicate
from twopoint.errors import DimensionError, DomainError, SymmetryError
from twopoint.tensors import SymTensor, symmetrize

__all__ = ("TensorField", "MetricField", "SkewnessField", "QuarticField", "FieldFn", "GradientFn")

log = logging.getLogger(__name__)

FieldFn = Callable[[FloatArray], npt.ArrayLike]
# Analytic first derivatives; out[k, ...] = d field / d q^k.
GradientFn = Callable[[FloatArray], npt.ArrayLike]


class TensorField:
    """
    A fully symmetric tensor field q -> F(q) of fixed rank.

    Args:
        dim: chart dimension n.
        fn: returns the dense (n,)*rank array at a point.
        label: identifier used in reports.
        derivative: optional analytic gradient; finite differences are used otherwise.
        domain: predicate on points where the field is defined.
    """

    rank: ClassVar[int]

    def __init__(
        self,
        dim: int,
        fn: FieldFn,
        label: str,
        derivative: Optional[GradientFn] = None,
        domain: Optional[DomainPredicate] = None,
    ) -> None:
        if dim < 1:
            raise DimensionError(f"Field dimension must be positive, got {dim}")
        self.dim = dim
        self.label = label
        self._fn = fn
        self._derivative = derivative
        self.domain = domain

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.dim,) * self.rank

    @property
    def has_derivative(self) -> bool:
        return self._derivative is not None

    def contains(self, q: FloatArray) -> bool:
        return self.domain is None or bool(self.domain(q))

    def dense(self, q: PointLike) -> FloatArray:
        qa = as_point(q, self.dim)
        if not self.contains(qa):
            raise DomainError(f"{self.label}: {qa.tolist()} outside the domain")
        out = np.asarray(self._fn(qa), dtype=np.float64).reshape(self.shape)
        if not np.all(np.isfinite(out)):
            raise DomainError(f"{self.label}: non-finite value at {qa.tolist()}")
        return out

    def gradient(self, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> FloatArray:
        """out[k, i, ...] = d F_i... / d q^k, shape (n,) + field shape."""
        qa = as_point(q, self.dim)
        if self._derivative is not None:
            out = np.asarray(self._derivative(qa), dtype=np.float64)
            return out.reshape((self.dim,) + self.shape)
        return field_gradient(self.dense, qa, cfg)

    def is_zero(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"{type(self).__name__}(label={self.label!r}, dim={self.dim})"


class MetricField(TensorField):
    """Symmetric positive-definite g_ij(q)."""

    rank = 2

    def dense(self, q: PointLike) -> Matrix:
        out = super().dense(q)
        asym = float(np.max(np.abs(out - out.T)))
        if asym > 1e-12 * max(1.0, float(np.max(np.abs(out)))):
            raise SymmetryError(f"{self.label}: metric not symmetric at {np.asarray(q).tolist()} ({asym:.3e})")
        return out

    evaluate = dense

    def is_positive(self, q: PointLike) -> bool:
        try:
            np.linalg.cholesky(self.dense(q))
        except np.linalg.LinAlgError:
            return False
        return True

    @classmethod
    def constant(cls, m: npt.ArrayLike, label: str = "constant") -> Self:
        mat = as_matrix(m)
        n = mat.shape[0]
        return cls(n, lambda q: mat, label, derivative=lambda q: np.zeros((n, n, n)))


class _SymField(TensorField):
    def evaluate(self, q: PointLike) -> SymTensor:
        return symmetrize(self.dense(q))

    @classmethod
    def zero(cls, dim: int) -> Self:
        shape = (dim,) * cls.rank
        field = cls(dim, lambda q: np.zeros(shape), "zero", derivative=lambda q: np.zeros((dim,) + shape))
        field._zero = True
        return field

    @classmethod
    def constant(cls, t: SymTensor | npt.ArrayLike, label: str = "constant") -> Self:
        tensor = t if isinstance(t, SymTensor) else symmetrize(t)
        if tensor.rank != cls.rank:
            raise DimensionError(f"{cls.__name__} needs rank {cls.rank}, got {tensor.rank}")
        full = tensor.dense()
        n = tensor.dim
        return cls(n, lambda q: full, label, derivative=lambda q: np.zeros((n,) + full.shape))

    @classmethod
    def uniform(cls, dim: int, value: float, label: str | None = None) -> Self:
        """Every component equal to ``value``."""
        return cls.constant(np.full((dim,) * cls.rank, float(value)), label or f"uniform({value:g})")

    def is_zero(self) -> bool:
        return getattr(self, "_zero", False)


class SkewnessField(_SymField):
    """Fully symmetric T_ijk(q)."""

    rank = 3


class QuarticField(_SymField):
    """Fully symmetric C_ijkl(q); may be identically zero."""

    rank = 4
