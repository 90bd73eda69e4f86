import warnings

import numpy as np
import pytest

from tests.hj import bernoulli_geodesic
from twopoint.analysis import extract_pair
from twopoint.diff import DiffConfig
from twopoint.errors import AccuracyWarning, DomainError
from twopoint.hj import PrincipalFunction, boundary_momenta, hamilton_jacobi_residual, principal_function

FD = DiffConfig(method="finite-difference")


@pytest.fixture(scope="module")
def geodesic_pf(bernoulli_lagrangian) -> PrincipalFunction:
    return principal_function(bernoulli_lagrangian.with_alpha(0.0))


def test_vanishes_on_diagonal(bernoulli_lagrangian, coarse) -> None:
    pf = principal_function(bernoulli_lagrangian, coarse)
    assert pf([0.4], [0.4]) == 0.0


def test_geodesic_action(geodesic_pf) -> None:
    _, action = bernoulli_geodesic(0.3, 0.5)
    assert geodesic_pf([0.3], [0.5]) == pytest.approx(action, rel=1e-8)


def test_black_box(bernoulli_lagrangian) -> None:
    pf = principal_function(bernoulli_lagrangian)
    assert not pf.jet_capable
    assert pf.reentrant
    assert pf.label == f"S[{bernoulli_lagrangian.label}]"


def test_out_of_reach(bernoulli_lagrangian, coarse) -> None:
    pf = principal_function(bernoulli_lagrangian, coarse)
    with pytest.raises(DomainError, match="no boundary-value solution"):
        pf([0.1], [0.9])


def test_memo(bernoulli_lagrangian, coarse) -> None:
    pf = principal_function(bernoulli_lagrangian, coarse.replace(memo=True))
    first = pf([0.3], [0.35])
    assert pf.memo_size == 1
    assert pf([0.3], [0.35]) == first
    assert pf.memo_size == 1
    pf.clear_memo()
    assert pf.memo_size == 0


def test_boundary_momenta(geodesic_pf) -> None:
    traj = geodesic_pf.solve([0.3], [0.4]).trajectory
    p_init, p_fin = boundary_momenta(geodesic_pf.lagrangian, traj)
    assert p_init[0] == pytest.approx(traj.velocities[0, 0] / 0.21)
    # 1/2 p^2 / g is conserved along a geodesic
    assert p_fin[0] ** 2 * 0.4 * 0.6 == pytest.approx(p_init[0] ** 2 * 0.21, rel=1e-8)


@pytest.mark.slow
def test_hamilton_jacobi(bernoulli_lagrangian) -> None:
    pf = principal_function(bernoulli_lagrangian)
    assert hamilton_jacobi_residual(pf, [0.3], [0.32]) < 1e-5


@pytest.mark.slow
@pytest.mark.parametrize("p", [0.3, 0.6])
def test_recovers_fields(bernoulli_lagrangian, p) -> None:
    pf = principal_function(bernoulli_lagrangian)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        pair = extract_pair(pf, [p], FD)
    g = 1.0 / (p * (1.0 - p))
    t = 1.0 / (1.0 - p) ** 2 - 1.0 / p**2
    assert pair.metric[(0, 0)] == pytest.approx(g, rel=1e-4)
    # S generates 2 alpha T
    assert pair.skewness[(0, 0, 0)] == pytest.approx(2 * bernoulli_lagrangian.alpha * t, abs=5e-3 * abs(t))


@pytest.mark.slow
def test_symmetric_without_skewness(geodesic_pf) -> None:
    assert geodesic_pf([0.3], [0.45]) == pytest.approx(geodesic_pf([0.45], [0.3]), rel=1e-10)
    assert np.isfinite(geodesic_pf([0.45], [0.3]))
