import numpy as np
import pytest

from tests import max_diff
from twopoint.errors import RegularityError, UnsupportedError
from twopoint.geometry import Lagrangian, MetricField, QuarticField, SkewnessField
from twopoint.hj import el_accel, explicit_accel
from twopoint.models import kl_categorical, reference_fields, skewed_categorical


def test_flat_metric_no_acceleration() -> None:
    L = Lagrangian(MetricField.constant(np.diag([1.0, 2.0])))
    assert np.all(el_accel(L, [0.3, 0.1], [1.0, -2.0]) == 0.0)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_bernoulli_geodesic_acceleration(bernoulli_lagrangian, p) -> None:
    # a = -Gamma v^2 with Gamma = (2p - 1) / (2 p (1 - p))
    L = bernoulli_lagrangian.with_alpha(0.0)
    v = 0.3
    expected = -(2 * p - 1) / (2 * p * (1 - p)) * v**2
    assert el_accel(L, [p], [v])[0] == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize(
    ["fields", "q", "v"],
    [
        (reference_fields(kl_categorical(2)), [0.3], [0.05]),
        (reference_fields(kl_categorical(3)), [0.2, 0.3], [0.02, -0.03]),
        (reference_fields(skewed_categorical(3)), [0.25, 0.4], [-0.04, 0.01]),
    ],
)
def test_mass_matrix_and_explicit_forms_agree(fields, q, v) -> None:
    g, t = fields
    L = Lagrangian(g, t, alpha=0.5)
    a = el_accel(L, q, v)
    b = explicit_accel(L, q, v)
    assert max_diff(a, b) < 1e-12 * max(1.0, float(np.max(np.abs(a))))


def test_explicit_rejects_quartic() -> None:
    L = Lagrangian(MetricField.constant(np.eye(1)), c=QuarticField.uniform(1, 1.0))
    with pytest.raises(UnsupportedError):
        explicit_accel(L, [0.0], [0.1])


def test_singular_hessian() -> None:
    # M = g + alpha T v = 1 + 1 * 1 * (-1)
    L = Lagrangian(MetricField.constant(np.eye(1)), SkewnessField.uniform(1, 1.0), alpha=1.0)
    with pytest.raises(RegularityError) as exc:
        el_accel(L, [0.0], [-1.0])
    assert exc.value.velocity_norm == pytest.approx(1.0)


def test_explicit_does_not_contract() -> None:
    # |alpha T v / g| = 2 at q = 0
    g = MetricField(1, lambda q: np.exp(q).reshape(1, 1), "exp", lambda q: np.exp(q).reshape(1, 1, 1))
    L = Lagrangian(g, SkewnessField.uniform(1, 1.0), alpha=1.0)
    with pytest.raises(RegularityError):
        explicit_accel(L, [0.0], [-2.0])
