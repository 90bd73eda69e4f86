import numpy as np
import pytest

from tests import max_diff
from tests.hj import bernoulli_geodesic
from twopoint.errors import BVPError
from twopoint.geometry import Lagrangian, MetricField
from twopoint.hj import SolverSettings, shoot
from twopoint.models import kl_bernoulli, reference_fields


def test_same_point(bernoulli_lagrangian, coarse) -> None:
    result = shoot(bernoulli_lagrangian, [0.4], [0.4], coarse)
    assert result.newton_iterations == 0
    assert result.endpoint_residual == 0.0
    assert result.trajectory.action == 0.0
    assert np.all(result.v_init == 0.0)


def test_linear_problem_one_iteration(coarse) -> None:
    L = Lagrangian(MetricField.constant(np.diag([1.0, 3.0])))
    result = shoot(L, [0.0, 0.0], [0.2, -0.1], coarse)
    assert result.newton_iterations == 1
    assert max_diff(result.v_init, [0.2, -0.1]) == 0.0
    assert result.trajectory.action == pytest.approx(0.5 * (0.04 + 0.03))


def test_geodesic() -> None:
    v0, action = bernoulli_geodesic(0.1, 0.9)
    L = Lagrangian(reference_fields(kl_bernoulli())[0])
    result = shoot(L, [0.1], [0.9], SolverSettings(trust_radius=1.0))
    assert result.endpoint_residual <= 1e-12
    assert result.v_init[0] == pytest.approx(v0, rel=1e-7)
    assert result.trajectory.action == pytest.approx(action, rel=1e-7)
    assert result.newton_iterations > 1


def test_skewed_lagrangian_converges(bernoulli_lagrangian, coarse) -> None:
    result = shoot(bernoulli_lagrangian, [0.3], [0.45], coarse)
    assert result.endpoint_residual <= coarse.tolerance
    assert result.trajectory.end[0] == pytest.approx(0.45, abs=1e-12)


def test_trust_radius(bernoulli_lagrangian) -> None:
    with pytest.raises(BVPError, match="trust radius") as exc:
        shoot(bernoulli_lagrangian, [0.1], [0.9])
    assert exc.value.iterations == 0


def test_iteration_limit(bernoulli_lagrangian) -> None:
    with pytest.raises(BVPError) as exc:
        shoot(bernoulli_lagrangian, [0.3], [0.45], SolverSettings(grid=20, max_iterations=1))
    assert exc.value.best_residual > 0.0
    assert exc.value.iterations == 1


def test_polish_does_not_worsen(bernoulli_lagrangian, coarse) -> None:
    polished = shoot(bernoulli_lagrangian, [0.3], [0.5], coarse)
    plain = shoot(bernoulli_lagrangian, [0.3], [0.5], coarse.replace(polish=False))
    assert polished.endpoint_residual <= plain.endpoint_residual
