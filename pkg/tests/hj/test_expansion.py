import numpy as np
import pytest

from tests import max_diff
from twopoint.errors import UnsupportedError
from twopoint.geometry import Lagrangian, MetricField, QuarticField, SkewnessField
from twopoint.hj import convergence_ratio, expansion_gradients, taylor_consistency
from twopoint.hj.expansion import VARIANTS


def test_zero_displacement(bernoulli_lagrangian) -> None:
    dx, dy = expansion_gradients(bernoulli_lagrangian, [0.3], [0.3])
    assert np.all(dx == 0.0) and np.all(dy == 0.0)


def test_unknown_variant(bernoulli_lagrangian) -> None:
    with pytest.raises(UnsupportedError):
        expansion_gradients(bernoulli_lagrangian, [0.3], [0.4], "exact")


def test_flat_quadratic_is_exact() -> None:
    m = np.array([[2.0, 0.5], [0.5, 1.0]])
    L = Lagrangian(MetricField.constant(m))
    d = np.array([0.3, -0.2])
    for variant in VARIANTS:
        dx, dy = expansion_gradients(L, [0.0, 0.0], d, variant)
        assert max_diff(dx, -m @ d) < 1e-14
        assert max_diff(dy, m @ d) < 1e-14


def test_variants_differ_only_in_curvature_and_quartic() -> None:
    L = Lagrangian(MetricField.constant(np.eye(1)), SkewnessField.uniform(1, 2.0), alpha=0.5)
    a = expansion_gradients(L, [0.0], [0.1], "corrected")
    b = expansion_gradients(L, [0.0], [0.1], "displayed")
    assert max_diff(a[0], b[0]) == 0.0
    # constant T: dS/dy = D + alpha/2 T D^2
    assert a[1][0] == pytest.approx(0.1 + 0.25 * 2.0 * 0.01)

    Lc = Lagrangian(MetricField.constant(np.eye(1)), c=QuarticField.uniform(1, 6.0))
    corrected = expansion_gradients(Lc, [0.0], [0.1], "corrected")[1][0]
    displayed = expansion_gradients(Lc, [0.0], [0.1], "displayed")[1][0]
    assert corrected - displayed == pytest.approx((1 / 6 - 1 / 24) * 6.0 * 1e-3)


@pytest.mark.slow
def test_consistency_report(bernoulli_lagrangian) -> None:
    report = taylor_consistency(bernoulli_lagrangian, [0.4], [0.02])
    assert set(report.residuals) == set(VARIANTS)
    assert report.residual == report.residuals["corrected"]
    assert report.residual < 1e-5
    record = report.to_record()
    assert record["variant"] == "corrected"
    assert record["delta"] == [0.02]


@pytest.mark.slow
def test_corrected_is_fourth_order(bernoulli_lagrangian) -> None:
    estimate = convergence_ratio(bernoulli_lagrangian, [0.4], [0.01])
    assert 10.0 <= estimate.ratio <= 24.0
    assert estimate.fine.residual < estimate.coarse.residual
