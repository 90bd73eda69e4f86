import csv

import numpy as np
import pytest

from tests import max_diff
from tests.hj import bernoulli_geodesic
from twopoint.errors import DimensionError, DomainError, RegularityError
from twopoint.geometry import Lagrangian, MetricField, SkewnessField
from twopoint.hj import Trajectory, integrate, speed_drift


def test_straight_line() -> None:
    L = Lagrangian(MetricField.constant(np.diag([1.0, 4.0])))
    traj = integrate(L, [0.0, 1.0], [2.0, -1.0], steps=10)
    assert traj.steps == 10
    assert max_diff(traj.end, [2.0, 0.0]) < 1e-14
    assert traj.action == pytest.approx(0.5 * (4.0 + 4.0))
    assert max_diff(traj.velocities, np.tile([2.0, -1.0], (11, 1))) == 0.0


def test_geodesic_endpoint_and_action(bernoulli_lagrangian) -> None:
    L = bernoulli_lagrangian.with_alpha(0.0)
    v0, action = bernoulli_geodesic(0.1, 0.9)
    traj = integrate(L, [0.1], [v0], steps=200)
    assert traj.end[0] == pytest.approx(0.9, abs=1e-8)
    assert traj.action == pytest.approx(action, rel=1e-8)
    assert speed_drift(L, traj) < 1e-8


def test_fourth_order(bernoulli_lagrangian) -> None:
    L = bernoulli_lagrangian.with_alpha(0.0)
    v0, action = bernoulli_geodesic(0.1, 0.9)
    errors = [abs(integrate(L, [0.1], [v0], steps=n).end[0] - 0.9) for n in (40, 80)]
    assert 12.0 <= errors[0] / errors[1] <= 20.0
    s_errors = [abs(integrate(L, [0.1], [v0], steps=n).action - action) for n in (40, 80)]
    assert 12.0 <= s_errors[0] / s_errors[1] <= 20.0


def test_leaves_domain() -> None:
    g = MetricField(1, lambda q: np.eye(1), "half-line", domain=lambda q: q[0] < 1.0)
    with pytest.raises(DomainError):
        integrate(Lagrangian(g), [0.0], [2.0], steps=10)


def test_regularity_error_carries_trajectory() -> None:
    L = Lagrangian(MetricField.constant(np.eye(1)), SkewnessField.uniform(1, 1.0), alpha=1.0)
    with pytest.raises(RegularityError) as exc:
        integrate(L, [0.0], [-1.0], steps=10)
    assert exc.value.trajectory is not None
    assert exc.value.trajectory.steps == 0


@pytest.mark.parametrize(["q0", "v0", "steps"], [([0.0], [1.0], 0), ([0.0], [1.0, 2.0], 5)])
def test_invalid_arguments(q0, v0, steps) -> None:
    with pytest.raises(DimensionError):
        integrate(Lagrangian(MetricField.constant(np.eye(1))), q0, v0, steps=steps)


def test_rest() -> None:
    traj = Trajectory.rest(np.array([0.3, 0.4]), 4)
    assert traj.steps == 4
    assert traj.action == 0.0
    assert max_diff(traj.start, traj.end) == 0.0


def test_times_must_increase() -> None:
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 0.0]), np.zeros((2, 1)), np.zeros((2, 1)), np.zeros(2))


def test_to_csv(tmp_path) -> None:
    L = Lagrangian(MetricField.constant(np.eye(2)))
    path = integrate(L, [0.0, 0.0], [1.0, 1.0], steps=4).to_csv(tmp_path / "traj.csv")
    with path.open() as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == ["t", "q0", "q1", "v0", "v1", "action"]
    assert len(rows) == 5
    assert float(rows[-1]["q1"]) == pytest.approx(1.0)
    assert float(rows[-1]["action"]) == pytest.approx(1.0)
