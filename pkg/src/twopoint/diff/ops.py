"""
Elementary functions for two-point function code.

Model evaluators call these instead of ``math``/``numpy`` so that the same code
runs on floats (finite differences) and on jets (Taylor mode).
"""
from __future__ import annotations

import math
from typing import Any

import numpy as np

from twopoint.diff.jet import Jet, Scalar, power_series
from twopoint.errors import DomainError

__all__ = ("log", "exp", "sqrt", "power", "value", "is_jet")


def is_jet(z: Any) -> bool:
    return isinstance(z, Jet)


def value(z: Any) -> float:
    """Real part of a jet, or the float itself."""
    return z.value if isinstance(z, Jet) else float(z)


def log(z: Scalar) -> Scalar:
    if isinstance(z, Jet):
        c0 = z.value
        if not c0 > 0.0:
            raise DomainError(f"log of non-positive value {c0!r}")
        derivs = [math.log(c0)]
        derivs += [(-1) ** (k - 1) * math.factorial(k - 1) / c0**k for k in range(1, z.degree + 1)]
        return z.compose(derivs)
    return np.log(z)


def exp(z: Scalar) -> Scalar:
    if isinstance(z, Jet):
        e = math.exp(z.value)
        return z.compose([e] * (z.degree + 1))
    return np.exp(z)


def sqrt(z: Scalar) -> Scalar:
    return power(z, 0.5)


def power(z: Scalar, a: float) -> Scalar:
    if isinstance(z, Jet):
        if float(a).is_integer():
            if a >= 0:
                return z ** int(a)
            if z.value == 0.0:
                raise DomainError(f"Negative power {a!r} of zero")
            return power_series(z, float(a))
        if not z.value > 0.0:
            raise DomainError(f"Non-integer power of non-positive value {z.value!r}")
        return power_series(z, float(a))
    return np.power(z, a)
