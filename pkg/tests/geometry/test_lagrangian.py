import numpy as np
import pytest

from tests import max_diff
from twopoint.errors import ConfigError, DimensionError
from twopoint.geometry import (
    Lagrangian,
    MetricField,
    QuarticField,
    SkewnessField,
    lagrangian_value,
    momentum,
    velocity_hessian,
)
from twopoint.models import reference_fields, skewed_categorical


@pytest.fixture(scope="module")
def quartic_lagrangian() -> Lagrangian:
    g, t = reference_fields(skewed_categorical(3))
    return Lagrangian(g, t, QuarticField.uniform(2, 0.8), alpha=0.7)


def numeric_gradient(fn, v, h=1e-6):
    return np.array([(fn(v + h * e) - fn(v - h * e)) / (2 * h) for e in np.eye(v.shape[0])])


def test_value_quadratic() -> None:
    L = Lagrangian(MetricField.constant(np.eye(2)))
    assert lagrangian_value(L, [0.0, 0.0], [3.0, 4.0]) == 12.5
    assert L.is_cubic


def test_value_terms() -> None:
    L = Lagrangian(MetricField.constant([[2.0]]), SkewnessField.uniform(1, 3.0), QuarticField.uniform(1, 12.0), 0.5)
    # 1/2 * 2 v^2 + 0.5 / 6 * 3 v^3 + 12 / 24 v^4 at v = 2
    assert lagrangian_value(L, [0.0], [2.0]) == pytest.approx(4.0 + 2.0 + 8.0)


def test_momentum_is_velocity_gradient(quartic_lagrangian) -> None:
    q = np.array([0.2, 0.3])
    v = np.array([0.4, -0.7])
    expected = numeric_gradient(lambda w: lagrangian_value(quartic_lagrangian, q, w), v)
    assert max_diff(momentum(quartic_lagrangian, q, v), expected) < 1e-7


def test_velocity_hessian_is_momentum_jacobian(quartic_lagrangian) -> None:
    q = np.array([0.2, 0.3])
    v = np.array([0.4, -0.7])
    jac = numeric_gradient(lambda w: momentum(quartic_lagrangian, q, w), v)
    hess = velocity_hessian(quartic_lagrangian, q, v)
    assert max_diff(hess, jac) < 1e-6
    assert max_diff(hess, hess.T) == 0.0


def test_rest_momentum(bernoulli_lagrangian) -> None:
    assert np.all(momentum(bernoulli_lagrangian, [0.4], [0.0]) == 0.0)
    assert velocity_hessian(bernoulli_lagrangian, [0.4], [0.0])[0, 0] == pytest.approx(1 / 0.24)


def test_alpha_zero_drops_cubic(quartic_lagrangian) -> None:
    L = quartic_lagrangian.with_alpha(0.0)
    q, v = [0.2, 0.3], [0.4, -0.7]
    g = L.g.dense(q)
    v_arr = np.array(v)
    quartic = 0.8 * v_arr.sum() ** 4 / 24
    assert lagrangian_value(L, q, v) == pytest.approx(0.5 * v_arr @ g @ v_arr + quartic)


def test_local_coefficients(bernoulli_lagrangian) -> None:
    local = bernoulli_lagrangian.local([0.3])
    assert local.g.shape == (1, 1)
    assert local.dg.shape == (1, 1, 1)
    assert local.dt.shape == (1, 1, 1, 1)
    assert np.all(local.c == 0.0) and np.all(local.dc == 0.0)
    assert local.dg[0, 0, 0] == pytest.approx(local.t[0, 0, 0])


def test_label(bernoulli_lagrangian) -> None:
    assert bernoulli_lagrangian.label == "L[fisher-rao:2, kl-skewness:2; alpha=0.5]"


def test_invalid_alpha() -> None:
    with pytest.raises(ConfigError):
        Lagrangian(MetricField.constant(np.eye(1)), alpha=float("nan"))


def test_dimension_mismatch() -> None:
    with pytest.raises(DimensionError):
        Lagrangian(MetricField.constant(np.eye(2)), SkewnessField.zero(3))
    with pytest.raises(DimensionError):
        lagrangian_value(Lagrangian(MetricField.constant(np.eye(2))), [0.0, 0.0], [1.0])
