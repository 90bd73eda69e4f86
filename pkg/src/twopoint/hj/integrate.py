"""Fixed-step RK4 integration of Euler-Lagrange trajectories with their action."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.errors import DimensionError, DomainError, RegularityError
from twopoint.geometry.lagrangian import Lagrangian
from twopoint.hj.dynamics import accel_from_local

__all__ = ("Trajectory", "integrate", "state_derivative")

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trajectory:
    """Samples of gamma on a uniform grid over [0, 1]."""

    times: FloatArray
    positions: FloatArray
    velocities: FloatArray
    running_action: FloatArray

    def __post_init__(self) -> None:
        if self.positions.shape[0] != self.times.shape[0]:
            raise DimensionError("positions and times differ in length")
        if self.times.shape[0] > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    @property
    def action(self) -> float:
        return float(self.running_action[-1])

    @property
    def steps(self) -> int:
        return self.times.shape[0] - 1

    @property
    def start(self) -> FloatArray:
        return self.positions[0]

    @property
    def end(self) -> FloatArray:
        return self.positions[-1]

    @classmethod
    def rest(cls, q: FloatArray, steps: int) -> Trajectory:
        """The constant trajectory gamma(t) = q."""
        n = q.shape[0]
        return cls(
            np.linspace(0.0, 1.0, steps + 1),
            np.tile(q, (steps + 1, 1)),
            np.zeros((steps + 1, n)),
            np.zeros(steps + 1),
        )

    def to_rows(self) -> list[dict[str, float]]:
        rows = []
        for i, t in enumerate(self.times):
            row = {"t": float(t)}
            row.update({f"q{j}": float(c) for j, c in enumerate(self.positions[i])})
            row.update({f"v{j}": float(c) for j, c in enumerate(self.velocities[i])})
            row["action"] = float(self.running_action[i])
            rows.append(row)
        return rows

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write t, q^i, v^i and the running action, one row per sample."""
        path = Path(path)
        rows = self.to_rows()
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        return path


def state_derivative(L: Lagrangian, q: FloatArray, v: FloatArray, cfg: DiffConfig) -> tuple[FloatArray, float]:
    """(acceleration, Lagrangian value) at (q, v) from one field evaluation."""
    if not L.contains(q):
        raise DomainError(f"Trajectory left the domain at {q.tolist()}")
    local = L.local(q, cfg)
    acc = accel_from_local(local, L.alpha, v)
    lag = (
        0.5 * v @ local.g @ v
        + L.alpha / 6.0 * np.einsum("ijk,i,j,k->", local.t, v, v, v)
        + np.einsum("ijkl,i,j,k,l->", local.c, v, v, v, v) / 24.0
    )
    if not (np.all(np.isfinite(acc)) and np.isfinite(lag)):
        raise DomainError(f"Non-finite dynamics at q = {q.tolist()}, v = {v.tolist()}")
    return acc, float(lag)


def integrate(
    L: Lagrangian,
    q0: PointLike,
    v0: PointLike,
    steps: int = 200,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> Trajectory:
    """
    Integrate (q, v, action) from t = 0 to t = 1 with classical RK4 over ``steps`` steps.

    The action is carried as a third state component, so it is accurate to the
    same order as the trajectory.

    Raises:
        RegularityError: singular velocity Hessian; ``trajectory`` holds the samples so far.
        DomainError: the path left the domain of the fields.
    """
    if steps < 1:
        raise DimensionError(f"steps must be at least 1, got {steps}")
    q = as_point(q0, L.dim)
    v = np.atleast_1d(np.asarray(v0, dtype=np.float64)).copy()
    if v.shape != q.shape:
        raise DimensionError(f"Velocity has shape {v.shape}, expected {q.shape}")

    h = 1.0 / steps
    times = np.linspace(0.0, 1.0, steps + 1)
    positions = np.empty((steps + 1, L.dim))
    velocities = np.empty((steps + 1, L.dim))
    action = np.zeros(steps + 1)
    positions[0], velocities[0] = q, v

    def rhs(qq: FloatArray, vv: FloatArray) -> tuple[FloatArray, FloatArray, float]:
        acc, lag = state_derivative(L, qq, vv, cfg)
        return vv, acc, lag

    for i in range(steps):
        try:
            dq1, dv1, ds1 = rhs(q, v)
            dq2, dv2, ds2 = rhs(q + 0.5 * h * dq1, v + 0.5 * h * dv1)
            dq3, dv3, ds3 = rhs(q + 0.5 * h * dq2, v + 0.5 * h * dv2)
            dq4, dv4, ds4 = rhs(q + h * dq3, v + h * dv3)
        except RegularityError as e:
            e.trajectory = Trajectory(
                times[: i + 1], positions[: i + 1].copy(), velocities[: i + 1].copy(), action[: i + 1].copy()
            )
            raise
        q = q + h / 6.0 * (dq1 + 2.0 * dq2 + 2.0 * dq3 + dq4)
        v = v + h / 6.0 * (dv1 + 2.0 * dv2 + 2.0 * dv3 + dv4)
        action[i + 1] = action[i] + h / 6.0 * (ds1 + 2.0 * ds2 + 2.0 * ds3 + ds4)
        positions[i + 1], velocities[i + 1] = q, v

    return Trajectory(times, positions, velocities, action)
