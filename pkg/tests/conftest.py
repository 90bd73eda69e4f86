import numpy as np
import pytest

from twopoint.diff import DiffConfig
from twopoint.geometry import Lagrangian
from twopoint.hj import SolverSettings
from twopoint.models import kl_bernoulli, reference_fields

JET = DiffConfig(method="taylor-jet")
FD = DiffConfig(method="finite-difference")


@pytest.fixture(scope="session")
def jet() -> DiffConfig:
    return JET


@pytest.fixture(scope="session")
def fd() -> DiffConfig:
    return FD


@pytest.fixture(params=["taylor-jet", "finite-difference"])
def method_cfg(request) -> DiffConfig:
    """Both differentiation backends."""
    return DiffConfig(method=request.param)


@pytest.fixture(scope="session")
def bernoulli():
    return kl_bernoulli()


@pytest.fixture(scope="session")
def bernoulli_lagrangian(bernoulli) -> Lagrangian:
    g, t = reference_fields(bernoulli)
    return Lagrangian(g, t, alpha=0.5)


@pytest.fixture(scope="session")
def coarse() -> SolverSettings:
    """Small grid for tests that only need a converged trajectory."""
    return SolverSettings(grid=50)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
