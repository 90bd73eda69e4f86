"""Two-point boundary values by Newton shooting on the initial velocity."""
from __future__ import annotations

import logging
from typing import NamedTuple, Optional

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.config import DEFAULT_DIFF, EPS, DiffConfig
from twopoint.errors import BVPError, DomainError, RegularityError
from twopoint.geometry.lagrangian import Lagrangian
from twopoint.hj.integrate import Trajectory, integrate
from twopoint.hj.settings import DEFAULT_SOLVER, SolverSettings

__all__ = ("ShootingResult", "shoot", "MAX_HALVINGS", "REFRESH_RATIO")

log = logging.getLogger(__name__)

MAX_HALVINGS = 8
# Recompute the Jacobian when a step reduces the residual by less than this factor.
REFRESH_RATIO = 0.5


class ShootingResult(NamedTuple):
    v_init: FloatArray
    endpoint_residual: float
    newton_iterations: int
    trajectory: Trajectory


class _EndpointMap:
    """v0 -> gamma_v0(1) - y, counting integrations."""

    def __init__(self, L: Lagrangian, x: FloatArray, y: FloatArray, settings: SolverSettings, cfg: DiffConfig):
        self.L = L
        self.x = x
        self.y = y
        self.settings = settings
        self.cfg = cfg
        self.calls = 0

    def trajectory(self, v0: FloatArray) -> Trajectory:
        self.calls += 1
        return integrate(self.L, self.x, v0, self.settings.grid, self.cfg)

    def residual(self, v0: FloatArray) -> tuple[FloatArray, Trajectory]:
        traj = self.trajectory(v0)
        return traj.end - self.y, traj

    def try_residual(self, v0: FloatArray) -> Optional[tuple[FloatArray, Trajectory]]:
        try:
            return self.residual(v0)
        except (RegularityError, DomainError) as e:
            log.debug("Trial velocity %s rejected: %s", v0.tolist(), e)
            return None

    def jacobian(self, v0: FloatArray, r0: FloatArray) -> FloatArray:
        n = v0.shape[0]
        h = self.settings.jacobian_step or np.sqrt(EPS) * max(1.0, float(np.max(np.abs(v0))))
        jac = np.empty((n, n))
        for k in range(n):
            dv = np.zeros(n)
            dv[k] = h
            r, _ = self.residual(v0 + dv)
            jac[:, k] = (r - r0) / h
        return jac


def _norm(r: FloatArray) -> float:
    return float(np.max(np.abs(r)))


def shoot(
    L: Lagrangian,
    x: PointLike,
    y: PointLike,
    settings: SolverSettings = DEFAULT_SOLVER,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> ShootingResult:
    """
    Find v0 with gamma(0) = x, gamma(1) = y.

    The iteration starts from v0 = y - x and selects the near-straight branch.
    ``newton_iterations`` counts evaluations of the endpoint map along the
    accepted path, so an exactly linear problem reports 1 and x == y reports 0.

    Raises:
        BVPError: |y - x| exceeds the trust radius, or no convergence within
            ``settings.max_iterations``; carries the best residual reached.
    """
    xa = as_point(x, L.dim)
    ya = as_point(y, L.dim)
    delta = ya - xa
    distance = float(np.linalg.norm(delta))
    if distance > settings.trust_radius:
        raise BVPError(
            f"|y - x| = {distance:.3e} exceeds the trust radius {settings.trust_radius:g}",
            float("nan"),
            0,
        )
    if distance == 0.0:
        return ShootingResult(np.zeros(L.dim), 0.0, 0, Trajectory.rest(xa, settings.grid))

    endpoint = _EndpointMap(L, xa, ya, settings, cfg)
    v = delta.copy()
    try:
        r, traj = endpoint.residual(v)
    except (RegularityError, DomainError) as e:
        raise BVPError(f"Initial guess v0 = y - x cannot be integrated: {e}", float("inf"), 1) from e
    res = _norm(r)
    iterations = 1
    jac: Optional[FloatArray] = None

    while res > settings.tolerance:
        if iterations >= settings.max_iterations:
            raise BVPError(
                f"Shooting from {xa.tolist()} to {ya.tolist()} did not converge in {iterations} iterations "
                f"(residual {res:.3e})",
                res,
                iterations,
            )
        fresh = jac is None
        if jac is None:
            jac = endpoint.jacobian(v, r)
            log.debug("Jacobian refreshed at iteration %d", iterations)
        try:
            dv = -np.linalg.solve(jac, r)
        except np.linalg.LinAlgError as e:
            raise BVPError(f"Singular shooting Jacobian: {e}", res, iterations) from e

        accepted = None
        lam = 1.0
        for _ in range(MAX_HALVINGS + 1):
            trial = endpoint.try_residual(v + lam * dv)
            if trial is not None and _norm(trial[0]) < res:
                accepted = trial
                break
            lam *= 0.5
        iterations += 1
        if accepted is None:
            if fresh:
                raise BVPError(f"Line search failed (residual {res:.3e})", res, iterations)
            jac = None
            continue

        v = v + lam * dv
        new_res = _norm(accepted[0])
        if new_res > REFRESH_RATIO * res:
            jac = None
        r, traj = accepted
        log.debug("Shooting iteration %d: residual %.3e -> %.3e (step %g)", iterations, res, new_res, lam)
        res = new_res

    if settings.polish and res > 0.0 and jac is not None:
        try:
            dv = -np.linalg.solve(jac, r)
        except np.linalg.LinAlgError:
            dv = None
        if dv is not None:
            trial = endpoint.try_residual(v + dv)
            if trial is not None and _norm(trial[0]) <= res:
                v = v + dv
                r, traj = trial
                res = _norm(r)

    log.debug("Shooting converged in %d iterations, %d integrations", iterations, endpoint.calls)
    return ShootingResult(v, res, iterations, traj)
