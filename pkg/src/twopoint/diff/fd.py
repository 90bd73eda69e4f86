"""Central finite-difference stencils with Richardson extrapolation."""
from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Final, Iterable, NamedTuple, Sequence

import numpy as np

from twopoint._typing import FloatArray
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.errors import AccuracyWarning, DomainError

__all__ = (
    "STENCILS",
    "Estimate",
    "richardson",
    "stencil",
    "fd_mixed",
    "evaluate_points",
    "field_gradient",
)

log = logging.getLogger(__name__)

# Derivative order -> ((offset, weight), ...), second-order accurate, unit step.
STENCILS: Final[dict[int, tuple[tuple[int, float], ...]]] = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


class Estimate(NamedTuple):
    """A derivative value with its error estimate."""

    value: float
    error: float = 0.0
    converged: bool = True

    def __float__(self) -> float:
        return self.value


Offsets = tuple[tuple[int, ...], float]


def stencil(counts: Sequence[tuple[int, int]], size: int) -> list[Offsets]:
    """
    Tensor-product stencil for a mixed partial.

    Args:
        counts: (variable, derivative count) pairs.
        size: length of the variable vector.

    Returns:
        (integer offset vector, weight) pairs in units of the step.
    """
    per_var = [STENCILS[k] for _, k in counts]
    out: list[Offsets] = []
    for combo in product(*per_var):
        offset = [0] * size
        weight = 1.0
        for (var, _), (off, w) in zip(counts, combo):
            offset[var] = off
            weight *= w
        out.append((tuple(offset), weight))
    return out


def richardson(values: Sequence[float]) -> Estimate:
    """
    Extrapolate estimates at steps h, h/2, h/4, ... with even error powers.

    The error estimate is the change made by the last extrapolation column.
    """
    if len(values) == 1:
        return Estimate(float(values[0]), float("nan"), True)
    table = [list(values)]
    for j in range(1, len(values)):
        prev = table[-1]
        factor = 4.0**j - 1.0
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / factor for i in range(len(prev) - 1)])
    best = table[-1][-1]
    error = abs(best - table[-2][-1])
    return Estimate(float(best), float(error), True)


def evaluate_points(
    fn: Callable[[FloatArray], float],
    points: Iterable[tuple[float, ...]],
    workers: int = 1,
) -> dict[tuple[float, ...], float]:
    """Evaluate ``fn`` once per distinct point, optionally on a thread pool."""
    unique = list(dict.fromkeys(points))
    if workers > 1 and len(unique) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: fn(np.array(p)), unique))
    else:
        results = [fn(np.array(p)) for p in unique]
    values = dict(zip(unique, results))
    for p, v in values.items():
        if not np.isfinite(v):
            raise DomainError(f"Non-finite value inside a stencil at {list(p)}")
    return values


Plan = list[list[tuple[tuple[float, ...], float]]]


def _plan(z0: FloatArray, counts: Sequence[tuple[int, int]], h: float, levels: int) -> Plan:
    base = stencil(counts, z0.shape[0])
    order = sum(k for _, k in counts)
    plan = []
    for level in range(levels):
        step = h / 2**level
        scale = step**order
        plan.append([(tuple(z0 + np.asarray(off) * step), w / scale) for off, w in base])
    return plan


def fd_mixed(
    fn: Callable[[FloatArray], float],
    z0: FloatArray,
    counts: Sequence[tuple[int, int]],
    h: float,
    levels: int = 2,
    tol: float | None = None,
    cache: dict[tuple[float, ...], float] | None = None,
    workers: int = 1,
) -> Estimate:
    """Mixed partial of ``fn`` at ``z0`` by central differences and Richardson extrapolation."""
    plan = _plan(z0, counts, h, levels)
    cache = {} if cache is None else cache
    missing = [p for level in plan for p, _ in level if p not in cache]
    if missing:
        cache.update(evaluate_points(fn, missing, workers))
    per_level = [sum(w * cache[p] for p, w in level) for level in plan]
    est = richardson(per_level)
    if tol is not None and est.error > tol * max(1.0, abs(est.value)):
        warnings.warn(
            f"Richardson extrapolation did not converge: error estimate {est.error:.3e} > {tol:.3e}",
            AccuracyWarning,
            stacklevel=2,
        )
        return est._replace(converged=False)
    return est


def field_gradient(
    fn: Callable[[FloatArray], FloatArray],
    q: FloatArray,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> FloatArray:
    """
    First derivatives of an array-valued field.

    Returns:
        Array of shape (n, *fn(q).shape) with out[k] = d fn / d q^k.
    """
    n = q.shape[0]
    h = cfg.step(1, q)
    grads = []
    for k in range(n):
        per_level = []
        for level in range(cfg.richardson_levels):
            step = h / 2**level
            e = np.zeros(n)
            e[k] = step
            per_level.append((np.asarray(fn(q + e)) - np.asarray(fn(q - e))) / (2.0 * step))
        grads.append(_richardson_array(per_level))
    return np.stack(grads)


def _richardson_array(values: Sequence[FloatArray]) -> FloatArray:
    table = list(values)
    for j in range(1, len(values)):
        factor = 4.0**j - 1.0
        table = [table[i + 1] + (table[i + 1] - table[i]) / factor for i in range(len(table) - 1)]
    return table[-1]
