"""Model descriptors: a potential and/or closed-form fields on a chart."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np
import numpy.typing as npt

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.function import DomainPredicate, TwoPointFunction
from twopoint.errors import DimensionError, ModelError, UnsupportedError
from twopoint.geometry.fields import MetricField, SkewnessField

__all__ = ("Domain", "ModelDescriptor", "Reference")

Reference = Callable[[FloatArray], npt.ArrayLike]


@dataclass(frozen=True)
class Domain:
    """
    An open chart region with a sampling box.

    Args:
        description: human-readable form, echoed in reports.
        contains: membership predicate.
        lower: sampling box lower corner.
        upper: sampling box upper corner.
        project: optional map from the box onto the sampled submanifold.
    """

    description: str
    contains: DomainPredicate
    lower: FloatArray
    upper: FloatArray
    project: Optional[Callable[[FloatArray], FloatArray]] = None

    @classmethod
    def box(cls, lower: npt.ArrayLike, upper: npt.ArrayLike, description: str | None = None) -> Domain:
        lo = np.atleast_1d(np.asarray(lower, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(upper, dtype=np.float64))
        return cls(
            description or f"box {lo.tolist()} .. {hi.tolist()}",
            lambda q: bool(np.all(q > lo) and np.all(q < hi)),
            lo,
            hi,
        )

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def from_unit(self, u: npt.ArrayLike) -> FloatArray:
        """Map a point of the unit cube into the domain."""
        ua = np.asarray(u, dtype=np.float64)
        q = self.lower + ua * (self.upper - self.lower)
        return self.project(q) if self.project is not None else q


@dataclass(frozen=True)
class ModelDescriptor:
    name: str
    dim: int
    domain: Domain
    base_point: FloatArray
    potential: Optional[TwoPointFunction] = None
    metric: Optional[MetricField] = None
    skewness: Optional[SkewnessField] = None
    references: Mapping[str, Reference] = field(default_factory=dict)
    invertible: bool = True

    def __post_init__(self) -> None:
        if self.potential is None and (self.metric is None or self.skewness is None):
            raise ModelError(f"Model {self.name!r} needs a potential or a (metric, skewness) pair")
        for part in (self.potential, self.metric, self.skewness):
            if part is not None and part.dim != self.dim:
                raise DimensionError(f"Model {self.name!r}: {part!r} has dimension {part.dim}, expected {self.dim}")
        if self.domain.dim != self.dim or self.base_point.shape != (self.dim,):
            raise DimensionError(f"Model {self.name!r}: domain or base point does not match dimension {self.dim}")

    @property
    def has_references(self) -> bool:
        return self.metric is not None and self.skewness is not None

    def require_potential(self) -> TwoPointFunction:
        if self.potential is None:
            raise UnsupportedError(f"Model {self.name!r} has no potential")
        return self.potential

    def reference(self, name: str, q: PointLike) -> FloatArray:
        """Closed-form reference tensor ``name`` at ``q``."""
        try:
            fn = self.references[name]
        except KeyError:
            raise UnsupportedError(f"Model {self.name!r} has no {name!r} reference") from None
        return np.asarray(fn(as_point(q, self.dim)), dtype=np.float64)
