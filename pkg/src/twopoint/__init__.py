from __future__ import annotations

from twopoint.analysis import extract, extract_metric, extract_rank4, extract_skewness, sign_table
from twopoint.diff import DiffConfig, SlotPattern, TwoPointFunction, derivative_table, mixed_partial
from twopoint.geometry import Lagrangian, a_tensor, christoffel_lc, dual_christoffel, lagrangian_value
from twopoint.hj import SolverSettings, el_accel, integrate, principal_function, shoot
from twopoint.models import model, reference_fields
from twopoint.tensors import SymTensor

__all__ = (
    "DiffConfig",
    "Lagrangian",
    "SlotPattern",
    "SolverSettings",
    "SymTensor",
    "TwoPointFunction",
    "a_tensor",
    "christoffel_lc",
    "derivative_table",
    "dual_christoffel",
    "el_accel",
    "extract",
    "extract_metric",
    "extract_rank4",
    "extract_skewness",
    "integrate",
    "lagrangian_value",
    "mixed_partial",
    "model",
    "principal_function",
    "reference_fields",
    "shoot",
    "sign_table",
    "__version__",
)
__version__ = "0.1.0"
