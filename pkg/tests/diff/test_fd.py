import math
import warnings

import numpy as np
import pytest

from twopoint.diff.fd import fd_mixed, field_gradient, richardson, stencil
from twopoint.errors import AccuracyWarning, DomainError


def test_stencil_weights_sum() -> None:
    # each one-dimensional stencil annihilates constants
    for counts in ([(0, 1)], [(0, 2)], [(0, 1), (1, 3)], [(0, 2), (1, 2)]):
        assert sum(w for _, w in stencil(counts, 2)) == pytest.approx(0.0)


def test_stencil_offsets() -> None:
    offsets = {off for off, _ in stencil([(1, 1)], 3)}
    assert offsets == {(0, -1, 0), (0, 1, 0)}


def test_richardson_removes_h2() -> None:
    # f(h) = 1 + h^2: one extrapolation is exact
    est = richardson([1.0 + 0.1**2, 1.0 + 0.05**2])
    assert est.value == pytest.approx(1.0, abs=1e-15)


def test_richardson_single_level() -> None:
    est = richardson([2.0])
    assert est.value == 2.0
    assert math.isnan(est.error)


@pytest.mark.parametrize(
    ["counts", "expected"],
    [
        ([(0, 1)], math.cos(0.3) * math.exp(0.5)),
        ([(0, 1), (1, 1)], math.cos(0.3) * math.exp(0.5)),
        ([(0, 2)], -math.sin(0.3) * math.exp(0.5)),
        ([(0, 3), (1, 1)], -math.cos(0.3) * math.exp(0.5)),
    ],
)
def test_fd_mixed(counts, expected) -> None:
    def fn(z):
        return math.sin(z[0]) * math.exp(z[1])

    order = sum(k for _, k in counts)
    h = np.finfo(float).eps ** (1.0 / (order + 2))
    est = fd_mixed(fn, np.array([0.3, 0.5]), counts, h, levels=2)
    assert est.value == pytest.approx(expected, abs=10 ** (-9 + 1.5 * order))


def test_fd_cache_reused() -> None:
    calls = []

    def fn(z):
        calls.append(tuple(z))
        return float(z[0] ** 2)

    cache: dict = {}
    fd_mixed(fn, np.array([1.0]), [(0, 2)], 1e-3, cache=cache)
    first = len(calls)
    fd_mixed(fn, np.array([1.0]), [(0, 2)], 1e-3, cache=cache)
    assert len(calls) == first


def test_fd_non_finite() -> None:
    with pytest.raises(DomainError):
        fd_mixed(lambda z: math.log(z[0]) if z[0] > 0 else float("nan"), np.array([0.0]), [(0, 1)], 1e-3)


def test_fd_warns_when_not_converged() -> None:
    with pytest.warns(AccuracyWarning):
        est = fd_mixed(lambda z: math.sin(50 * z[0]), np.array([0.0]), [(0, 1)], 0.5, tol=1e-12)
    assert not est.converged


def test_fd_silent_when_converged() -> None:
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        est = fd_mixed(lambda z: z[0] ** 2, np.array([1.0]), [(0, 2)], 1e-2, tol=1e-6)
    assert est.converged


def test_field_gradient() -> None:
    def field(q):
        return np.array([[q[0] ** 2, q[0] * q[1]], [q[0] * q[1], np.sin(q[1])]])

    q = np.array([0.4, 1.1])
    grad = field_gradient(field, q)
    assert grad.shape == (2, 2, 2)
    expected = np.array(
        [
            [[0.8, 1.1], [1.1, 0.0]],
            [[0.0, 0.4], [0.4, np.cos(1.1)]],
        ]
    )
    assert np.max(np.abs(grad - expected)) < 1e-9
