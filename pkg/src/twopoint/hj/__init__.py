from twopoint.hj.dynamics import el_accel, explicit_accel
from twopoint.hj.expansion import ExpansionReport, convergence_ratio, expansion_gradients, taylor_consistency
from twopoint.hj.integrate import Trajectory, integrate
from twopoint.hj.momenta import boundary_momenta, hamilton_jacobi_residual, speed_drift
from twopoint.hj.principal import PrincipalFunction, principal_function
from twopoint.hj.settings import DEFAULT_SOLVER, SolverSettings
from twopoint.hj.shooting import ShootingResult, shoot

__all__ = (
    "DEFAULT_SOLVER",
    "ExpansionReport",
    "PrincipalFunction",
    "ShootingResult",
    "SolverSettings",
    "Trajectory",
    "boundary_momenta",
    "convergence_ratio",
    "el_accel",
    "expansion_gradients",
    "explicit_accel",
    "hamilton_jacobi_residual",
    "integrate",
    "principal_function",
    "shoot",
    "speed_drift",
    "taylor_consistency",
)
