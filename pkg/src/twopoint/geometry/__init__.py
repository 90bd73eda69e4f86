from twopoint.geometry.connections import (
    Christoffel,
    a_tensor,
    christoffel_gradient,
    christoffel_lc,
    dual_christoffel,
    duality_residual,
)
from twopoint.geometry.fields import MetricField, QuarticField, SkewnessField, TensorField
from twopoint.geometry.lagrangian import Lagrangian, lagrangian_value, momentum, velocity_hessian

__all__ = (
    "Christoffel",
    "Lagrangian",
    "MetricField",
    "QuarticField",
    "SkewnessField",
    "TensorField",
    "a_tensor",
    "christoffel_gradient",
    "christoffel_lc",
    "dual_christoffel",
    "duality_residual",
    "lagrangian_value",
    "momentum",
    "velocity_hessian",
)
