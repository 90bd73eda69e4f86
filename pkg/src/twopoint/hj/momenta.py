"""Boundary momenta and the Hamilton-Jacobi identity."""
from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.config import DiffConfig
from twopoint.diff.engine import gradient_at
from twopoint.geometry.lagrangian import Lagrangian, momentum
from twopoint.hj.integrate import Trajectory
from twopoint.hj.principal import PrincipalFunction

__all__ = ("BoundaryMomenta", "boundary_momenta", "hamilton_jacobi_residual", "speed_drift")

log = logging.getLogger(__name__)

# FD first derivatives of a shooting-based S; central differences with Richardson.
HJ_DIFF = DiffConfig(method="finite-difference")


class BoundaryMomenta(NamedTuple):
    p_init: FloatArray
    p_fin: FloatArray


def boundary_momenta(L: Lagrangian, traj: Trajectory) -> BoundaryMomenta:
    """dL/dv at t = 0 and t = 1; equal to -dS/dx and dS/dy."""
    return BoundaryMomenta(
        momentum(L, traj.positions[0], traj.velocities[0]),
        momentum(L, traj.positions[-1], traj.velocities[-1]),
    )


def hamilton_jacobi_residual(
    pf: PrincipalFunction,
    x: PointLike,
    y: PointLike,
    cfg: DiffConfig = HJ_DIFF,
) -> float:
    """max |dS/dx + p_init|, |dS/dy - p_fin| with the gradient taken numerically."""
    xa, ya = as_point(x, pf.dim), as_point(y, pf.dim)
    p_init, p_fin = boundary_momenta(pf.lagrangian, pf.solve(xa, ya).trajectory)
    dx, dy = gradient_at(pf, xa, ya, cfg)
    residual = max(float(np.max(np.abs(dx + p_init))), float(np.max(np.abs(dy - p_fin))))
    log.debug("Hamilton-Jacobi residual at (%s, %s): %.3e", xa.tolist(), ya.tolist(), residual)
    return residual


def speed_drift(L: Lagrangian, traj: Trajectory) -> float:
    """Spread of 1/2 g(v, v) along a trajectory; constant for geodesics."""
    energies = [
        0.5 * v @ L.g.dense(q) @ v for q, v in zip(traj.positions, traj.velocities)
    ]
    return float(np.max(energies) - np.min(energies))
