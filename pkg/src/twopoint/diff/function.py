"""Two-point functions S(x, y) on a chart product."""
from __future__ import annotations

import logging
from typing import Any, Callable, Optional, Sequence

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff import ops
from twopoint.errors import DimensionError, DomainError

__all__ = ("TwoPointFunction", "Evaluator", "DomainPredicate")

log = logging.getLogger(__name__)

# Evaluators receive coordinate sequences whose entries are floats or jets.
Evaluator = Callable[[Sequence[Any], Sequence[Any]], Any]
DomainPredicate = Callable[[FloatArray], bool]


class TwoPointFunction:
    """
    An evaluable scalar function S(x, y).

    Args:
        dim: chart dimension n of each argument.
        fn: evaluator; must only use arithmetic and :mod:`twopoint.diff.ops` when ``jet_capable``.
        label: identifier used in reports.
        reentrant: whether ``fn`` may be called from several threads at once.
        jet_capable: whether ``fn`` accepts jet coordinates.
        domain: predicate on a single point; both arguments must satisfy it.
    """

    def __init__(
        self,
        dim: int,
        fn: Evaluator,
        label: str,
        *,
        reentrant: bool = True,
        jet_capable: bool = True,
        domain: Optional[DomainPredicate] = None,
    ) -> None:
        if dim < 1:
            raise DimensionError(f"Two-point function dimension must be positive, got {dim}")
        self.dim = dim
        self.label = label
        self.reentrant = reentrant
        self.jet_capable = jet_capable
        self._fn = fn
        self._domain = domain

    def contains(self, q: FloatArray) -> bool:
        return self._domain is None or bool(self._domain(q))

    def _check_domain(self, x: FloatArray, y: FloatArray) -> None:
        for name, pt in (("x", x), ("y", y)):
            if not self.contains(pt):
                raise DomainError(f"{self.label}: {name} = {pt.tolist()} outside the domain")

    def __call__(self, x: PointLike, y: PointLike) -> float:
        xa = as_point(x, self.dim)
        ya = as_point(y, self.dim)
        self._check_domain(xa, ya)
        result = float(ops.value(self._fn(xa, ya)))
        if not np.isfinite(result):
            raise DomainError(f"{self.label}: non-finite value at x = {xa.tolist()}, y = {ya.tolist()}")
        return result

    eval = __call__

    def evaluate_raw(self, xs: Sequence[Any], ys: Sequence[Any]) -> Any:
        """Evaluate on float-or-jet coordinates, checking the domain on their real parts."""
        xa = np.array([ops.value(c) for c in xs])
        ya = np.array([ops.value(c) for c in ys])
        self._check_domain(xa, ya)
        return self._fn(xs, ys)

    def swapped(self) -> TwoPointFunction:
        """S(y, x)."""
        fn = self._fn
        return TwoPointFunction(
            self.dim,
            lambda x, y: fn(y, x),
            f"swap({self.label})",
            reentrant=self.reentrant,
            jet_capable=self.jet_capable,
            domain=self._domain,
        )

    def symmetrized(self) -> TwoPointFunction:
        """(S(x, y) + S(y, x)) / 2."""
        fn = self._fn
        return TwoPointFunction(
            self.dim,
            lambda x, y: 0.5 * (fn(x, y) + fn(y, x)),
            f"sym({self.label})",
            reentrant=self.reentrant,
            jet_capable=self.jet_capable,
            domain=self._domain,
        )

    def pullback(
        self,
        chart: Callable[[Sequence[Any]], Sequence[Any]],
        label: str | None = None,
        domain: Optional[DomainPredicate] = None,
    ) -> TwoPointFunction:
        """
        S(phi(x), phi(y)) for a chart map phi from new to old coordinates.

        ``chart`` must be written with :mod:`twopoint.diff.ops` to stay jet capable.
        """
        fn = self._fn
        inner = self._domain

        def composed(x: Sequence[Any], y: Sequence[Any]) -> Any:
            return fn(chart(x), chart(y))

        def pulled_domain(q: FloatArray) -> bool:
            if domain is not None and not domain(q):
                return False
            if inner is None:
                return True
            mapped = np.array([ops.value(c) for c in chart(list(q))])
            return bool(inner(mapped))

        return TwoPointFunction(
            self.dim,
            composed,
            label or f"pullback({self.label})",
            reentrant=self.reentrant,
            jet_capable=self.jet_capable,
            domain=pulled_domain,
        )

    def __repr__(self) -> str:
        return f"TwoPointFunction(label={self.label!r}, dim={self.dim})"
