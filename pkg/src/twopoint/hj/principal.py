"""Hamilton's principal function as a two-point function."""
from __future__ import annotations

import logging
import threading
from typing import Any, Sequence

import numpy as np

from twopoint.diff import ops
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.function import TwoPointFunction
from twopoint.errors import BVPError, DomainError
from twopoint.geometry.lagrangian import Lagrangian
from twopoint.hj.settings import DEFAULT_SOLVER, SolverSettings
from twopoint.hj.shooting import ShootingResult, shoot

__all__ = ("PrincipalFunction", "principal_function", "MEMO_DECIMALS")

log = logging.getLogger(__name__)

MEMO_DECIMALS = 13


class PrincipalFunction(TwoPointFunction):
    """
    S(x, y) = action of the Euler-Lagrange path from x at t = 0 to y at t = 1.

    Evaluation is a black box for differentiation: the taylor-jet method falls
    back to finite differences. Each call builds private solver state; the
    optional memo is guarded by a lock.
    """

    def __init__(
        self,
        lagrangian: Lagrangian,
        settings: SolverSettings = DEFAULT_SOLVER,
        cfg: DiffConfig = DEFAULT_DIFF,
    ) -> None:
        super().__init__(
            lagrangian.dim,
            self._evaluate,
            f"S[{lagrangian.label}]",
            reentrant=True,
            jet_capable=False,
            domain=lagrangian.g.domain,
        )
        self.lagrangian = lagrangian
        self.settings = settings
        self.cfg = cfg
        self._memo: dict[tuple[float, ...], float] = {}
        self._lock = threading.Lock()

    def solve(self, x: Any, y: Any) -> ShootingResult:
        """Shooting solution from x to y; BVP failures become domain errors."""
        try:
            return shoot(self.lagrangian, x, y, self.settings, self.cfg)
        except BVPError as e:
            raise DomainError(f"{self.label}: no boundary-value solution ({e})") from e

    def _evaluate(self, xs: Sequence[Any], ys: Sequence[Any]) -> float:
        x = np.array([ops.value(c) for c in xs])
        y = np.array([ops.value(c) for c in ys])
        if not self.settings.memo:
            return self.solve(x, y).trajectory.action
        key = tuple(np.round(np.concatenate([x, y]), MEMO_DECIMALS).tolist())
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self.solve(x, y).trajectory.action
        with self._lock:
            self._memo[key] = value
        return value

    def clear_memo(self) -> None:
        with self._lock:
            self._memo.clear()

    @property
    def memo_size(self) -> int:
        with self._lock:
            return len(self._memo)


def principal_function(
    L: Lagrangian,
    settings: SolverSettings = DEFAULT_SOLVER,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> PrincipalFunction:
    return PrincipalFunction(L, settings, cfg)
