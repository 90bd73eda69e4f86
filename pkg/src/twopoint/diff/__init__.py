from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.engine import (
    DerivativeTable,
    derivative_table,
    diagonal_gradient,
    gradient_at,
    mixed_partial,
    mixed_partial_at,
)
from twopoint.diff.fd import Estimate
from twopoint.diff.function import TwoPointFunction
from twopoint.diff.jet import Jet
from twopoint.diff.patterns import Slot, SlotPattern

__all__ = (
    "DiffConfig",
    "DEFAULT_DIFF",
    "DerivativeTable",
    "Estimate",
    "Jet",
    "Slot",
    "SlotPattern",
    "TwoPointFunction",
    "derivative_table",
    "diagonal_gradient",
    "gradient_at",
    "mixed_partial",
    "mixed_partial_at",
)
