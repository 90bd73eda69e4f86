"""Bounded worker pool for per-point work."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Generic, Optional, Sequence, TypeVar

from twopoint._typing import FloatArray
from twopoint.errors import TwoPointError

__all__ = ("Outcome", "run_points")

log = logging.getLogger(__name__)

_T = TypeVar("_T")


@dataclass(frozen=True)
class Outcome(Generic[_T]):
    index: int
    point: FloatArray
    value: Optional[_T]
    error: Optional[TwoPointError]

    @property
    def ok(self) -> bool:
        return self.error is None


def _run_one(fn: Callable[[FloatArray], _T], index: int, point: FloatArray) -> Outcome[_T]:
    try:
        return Outcome(index, point, fn(point), None)
    except TwoPointError as e:
        log.warning("Point %d %s failed: %s", index, point.tolist(), e)
        return Outcome(index, point, None, e)


def run_points(
    fn: Callable[[FloatArray], _T],
    points: Sequence[FloatArray],
    workers: int = 1,
) -> list[Outcome[_T]]:
    """
    Apply ``fn`` to every point; library errors are captured per point.

    Results are ordered by point index regardless of completion order.
    """
    if workers <= 1 or len(points) <= 1:
        return [_run_one(fn, i, p) for i, p in enumerate(points)]
    with ThreadPoolExecutor(max_workers=min(workers, len(points))) as pool:
        futures = [pool.submit(_run_one, fn, i, p) for i, p in enumerate(points)]
        outcomes = [f.result() for f in as_completed(futures)]
    return sorted(outcomes, key=lambda o: o.index)
