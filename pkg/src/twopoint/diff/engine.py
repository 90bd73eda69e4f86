"""Mixed partial derivatives of two-point functions on and off the diagonal."""
from __future__ import annotations

import logging
from collections.abc import Mapping
from itertools import combinations_with_replacement, product
from typing import Any, Iterator, Sequence

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff import ops
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.fd import Estimate, fd_mixed
from twopoint.diff.function import TwoPointFunction
from twopoint.diff.jet import Jet
from twopoint.diff.patterns import CanonicalKey, SlotPattern, all_marks, canonical_key, multiplicities
from twopoint.errors import DimensionError, DomainError

__all__ = (
    "DerivativeTable",
    "mixed_partial",
    "mixed_partial_at",
    "diagonal_gradient",
    "gradient_at",
    "derivative_table",
    "uses_jets",
    "keys_for_marks",
)

log = logging.getLogger(__name__)


def uses_jets(s: TwoPointFunction, cfg: DiffConfig) -> bool:
    if cfg.method != "taylor-jet":
        return False
    if not s.jet_capable:
        log.debug("%s is not jet capable, falling back to finite differences", s.label)
        return False
    return True


def _split(z: FloatArray, dim: int) -> tuple[FloatArray, FloatArray]:
    return z[:dim], z[dim:]


def _jet_eval(s: TwoPointFunction, z0: FloatArray, key: CanonicalKey) -> tuple[Any, tuple[int, ...]]:
    """Evaluate ``s`` with the variables of ``key`` seeded as jets."""
    counts = multiplicities(key)
    shape = tuple(k + 1 for _, k in counts)
    axis_of = {var: axis for axis, (var, _) in enumerate(counts)}
    coords: list[Any] = [
        Jet.variable(float(c), shape, axis_of[i]) if i in axis_of else float(c) for i, c in enumerate(z0)
    ]
    xs, ys = coords[: s.dim], coords[s.dim :]
    result = s.evaluate_raw(xs, ys)
    if not np.isfinite(ops.value(result)):
        raise DomainError(f"{s.label}: non-finite value at {z0.tolist()}")
    return result, shape


def _jet_derivative(result: Any, counts: tuple[int, ...]) -> float:
    if isinstance(result, Jet):
        d = result.derivative(counts)
        if not np.isfinite(d):
            raise DomainError("Non-finite jet coefficient")
        return d
    # Result independent of every seeded variable.
    return 0.0


def _flat(s: TwoPointFunction) -> Any:
    def fn(z: FloatArray) -> float:
        x, y = _split(z, s.dim)
        return s(x, y)

    return fn


def _key_estimate(
    s: TwoPointFunction,
    z0: FloatArray,
    key: CanonicalKey,
    cfg: DiffConfig,
    cache: dict[tuple[float, ...], float] | None = None,
) -> Estimate:
    order = len(key)
    if uses_jets(s, cfg):
        result, _ = _jet_eval(s, z0, key)
        return Estimate(_jet_derivative(result, tuple(k for _, k in multiplicities(key))))
    workers = cfg.workers if s.reentrant else 1
    return fd_mixed(
        _flat(s),
        z0,
        multiplicities(key),
        cfg.step(order, z0),
        cfg.richardson_levels,
        tol=cfg.tolerance(order),
        cache=cache,
        workers=workers,
    )


def mixed_partial_at(
    s: TwoPointFunction,
    x: PointLike,
    y: PointLike,
    pattern: SlotPattern,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> Estimate:
    """Mixed partial of ``s`` at an arbitrary (x, y)."""
    xa, ya = as_point(x, s.dim), as_point(y, s.dim)
    z0 = np.concatenate([xa, ya])
    return _key_estimate(s, z0, canonical_key(pattern, s.dim), cfg)


def mixed_partial(
    s: TwoPointFunction,
    q: PointLike,
    pattern: SlotPattern,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> Estimate:
    """
    Mixed partial of ``s`` at x = y = q.

    Examples:
        >>> from twopoint.models import quadratic_model
        >>> s = quadratic_model(np.eye(2)).potential
        >>> float(mixed_partial(s, [0.0, 0.0], SlotPattern.parse("L0R0")))
        -1.0
    """
    return mixed_partial_at(s, q, q, pattern, cfg)


def gradient_at(
    s: TwoPointFunction,
    x: PointLike,
    y: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> tuple[FloatArray, FloatArray]:
    """(dS/dx, dS/dy) at (x, y)."""
    xa, ya = as_point(x, s.dim), as_point(y, s.dim)
    z0 = np.concatenate([xa, ya])
    n = s.dim
    if uses_jets(s, cfg):
        # one jet per variable; a first-order jet over all 2n variables would
        # need a shape with 2n axes, which is the same cost
        grad = np.array([_jet_derivative(_jet_eval(s, z0, (v,))[0], (1,)) for v in range(2 * n)])
    else:
        cache: dict[tuple[float, ...], float] = {}
        grad = np.array([_key_estimate(s, z0, (v,), cfg, cache).value for v in range(2 * n)])
    return grad[:n], grad[n:]


def diagonal_gradient(s: TwoPointFunction, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> FloatArray:
    """All 2n first partials at (q, q), x-partials first."""
    dx, dy = gradient_at(s, q, q, cfg)
    return np.concatenate([dx, dy])


class DerivativeTable(Mapping[SlotPattern, float]):
    """
    Diagonal mixed partials of orders 2..max_order.

    Values are stored once per canonical key; every slot pattern with the same
    (mark, index) multiset reads the same entry.
    """

    def __init__(
        self,
        dim: int,
        max_order: int,
        values: dict[CanonicalKey, float],
        errors: dict[CanonicalKey, float] | None = None,
        method: str = "taylor-jet",
    ) -> None:
        self.dim = dim
        self.max_order = max_order
        self.method = method
        self._values = values
        self._errors = errors or {}

    def value(self, key: CanonicalKey) -> float:
        return self._values[key]

    def __getitem__(self, pattern: SlotPattern) -> float:
        if pattern.order > self.max_order:
            raise KeyError(pattern)
        try:
            return self._values[canonical_key(pattern, self.dim)]
        except DimensionError:
            raise KeyError(pattern) from None

    def __iter__(self) -> Iterator[SlotPattern]:
        for order in range(2, self.max_order + 1):
            for marks in all_marks(order):
                for idx in product(range(self.dim), repeat=order):
                    yield SlotPattern.from_marks(marks, idx)

    def __len__(self) -> int:
        return sum((2 * self.dim) ** r for r in range(2, self.max_order + 1))

    def dense(self, marks: str) -> FloatArray:
        """A[i1, ..., ir] = derivative with slot t marked marks[t] and indexed i_t."""
        r = len(marks)
        if not 2 <= r <= self.max_order:
            raise KeyError(marks)
        out = np.empty((self.dim,) * r)
        offsets = [0 if m == "L" else self.dim for m in marks]
        for idx in product(range(self.dim), repeat=r):
            out[idx] = self._values[tuple(sorted(i + o for i, o in zip(idx, offsets)))]
        return out

    def order_scale(self, order: int) -> float:
        """Largest magnitude among the order-k entries."""
        vals = [abs(v) for k, v in self._values.items() if len(k) == order]
        return max(vals, default=0.0)

    @property
    def max_error(self) -> float:
        errs = [e for e in self._errors.values() if np.isfinite(e)]
        return max(errs, default=0.0)


def _keys(size: int, order: int) -> list[CanonicalKey]:
    return list(combinations_with_replacement(range(size), order))


def _sub_counts(top: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    return product(*(range(k + 1) for k in top))


def keys_for_marks(marks: Sequence[str], dim: int) -> list[CanonicalKey]:
    """Canonical keys of every index assignment to the given mark strings."""
    keys: dict[CanonicalKey, None] = {}
    for m in marks:
        offsets = [0 if c == "L" else dim for c in m]
        for idx in product(range(dim), repeat=len(m)):
            keys[tuple(sorted(i + o for i, o in zip(idx, offsets)))] = None
    return list(keys)


def derivative_table(
    s: TwoPointFunction,
    q: PointLike,
    max_order: int,
    cfg: DiffConfig = DEFAULT_DIFF,
    marks: Sequence[str] | None = None,
) -> DerivativeTable:
    """
    Every diagonal mixed partial of orders 2..max_order at (q, q).

    With ``marks``, only the entries those mark strings read are computed; the
    table then raises KeyError for the others.
    """
    if max_order not in (2, 3, 4):
        raise DimensionError(f"max_order must be 2, 3 or 4, got {max_order}")
    qa = as_point(q, s.dim)
    z0 = np.concatenate([qa, qa])
    size = 2 * s.dim
    values: dict[CanonicalKey, float] = {}
    errors: dict[CanonicalKey, float] = {}

    if marks is not None:
        if any(not 2 <= len(m) <= max_order for m in marks):
            raise DimensionError(f"Mark strings {list(marks)} exceed order {max_order}")
        shared: dict[tuple[float, ...], float] = {}
        for key in keys_for_marks(marks, s.dim):
            est = _key_estimate(s, z0, key, cfg, shared)
            values[key] = est.value
            errors[key] = est.error
        method = "taylor-jet" if uses_jets(s, cfg) else "finite-difference"
        return DerivativeTable(s.dim, max_order, values, errors, method=method)

    if uses_jets(s, cfg):
        # one evaluation per top-order key yields all of its sub-keys
        for key in _keys(size, max_order):
            result, _ = _jet_eval(s, z0, key)
            counts = multiplicities(key)
            variables = [v for v, _ in counts]
            for sub in _sub_counts(tuple(k for _, k in counts)):
                if sum(sub) < 2:
                    continue
                sub_key = tuple(sorted(v for v, c in zip(variables, sub) for _ in range(c)))
                if sub_key not in values:
                    values[sub_key] = _jet_derivative(result, sub)
        log.debug("Jet table for %s at %s: %d entries", s.label, qa.tolist(), len(values))
        return DerivativeTable(s.dim, max_order, values, method=cfg.method)

    cache: dict[tuple[float, ...], float] = {}
    for order in range(2, max_order + 1):
        for key in _keys(size, order):
            est = _key_estimate(s, z0, key, cfg, cache)
            values[key] = est.value
            errors[key] = est.error
    log.debug("FD table for %s at %s: %d evaluations", s.label, qa.tolist(), len(cache))
    return DerivativeTable(s.dim, max_order, values, errors, method="finite-difference")
