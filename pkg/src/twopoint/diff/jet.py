"""
Truncated multivariate Taylor polynomials (jets).

A jet over variables z_0..z_{v-1} with degree bounds (k_0, ..., k_{v-1}) keeps
every monomial z^a with a_i <= k_i. Seeding each variable of a derivative key
with its multiplicity as bound keeps exactly the coefficients needed for that
derivative and all of its sub-derivatives.
"""
from __future__ import annotations

import math
from functools import lru_cache
from numbers import Real
from typing import Sequence, Union

import numpy as np
import numpy.typing as npt
from typing_extensions import Self

__all__ = ("Jet", "Scalar")

Shape = tuple[int, ...]


@lru_cache(maxsize=None)
def _product_plan(shape: Shape) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    """Index triples (i, j, k) with multi(i) + multi(j) = multi(k) inside ``shape``."""
    size = math.prod(shape)
    multi = np.array(list(np.ndindex(*shape)), dtype=np.intp).reshape(size, len(shape))
    ii, jj = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    summed = multi[ii] + multi[jj]
    inside = np.all(summed < np.array(shape), axis=1)
    kk = np.ravel_multi_index(tuple(summed[inside].T), shape)
    return ii[inside], jj[inside], kk


class Jet:
    """Truncated Taylor polynomial; coefficients indexed by per-variable degree."""

    __slots__ = ("coeffs",)
    # numpy scalars defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, coeffs: npt.ArrayLike) -> None:
        self.coeffs = np.asarray(coeffs, dtype=np.float64)

    @classmethod
    def constant(cls, value: float, shape: Shape) -> Self:
        c = np.zeros(shape)
        c.flat[0] = value
        return cls(c)

    @classmethod
    def variable(cls, value: float, shape: Shape, axis: int) -> Self:
        """The seeded variable z_axis around ``value``."""
        c = np.zeros(shape)
        c.flat[0] = value
        unit = [0] * len(shape)
        unit[axis] = 1
        c[tuple(unit)] = 1.0
        return cls(c)

    @property
    def shape(self) -> Shape:
        return self.coeffs.shape

    @property
    def value(self) -> float:
        return float(self.coeffs.flat[0])

    @property
    def degree(self) -> int:
        """Total degree bound."""
        return sum(self.shape) - len(self.shape)

    def derivative(self, counts: Sequence[int]) -> float:
        """Mixed partial with ``counts[i]`` derivatives in variable i."""
        return float(self.coeffs[tuple(counts)]) * math.prod(math.factorial(c) for c in counts)

    def compose(self, derivatives: Sequence[float]) -> Jet:
        """f(self) given f and its derivatives at ``self.value``."""
        h = Jet(self.coeffs.copy())
        h.coeffs.flat[0] = 0.0
        out = np.zeros(self.shape)
        out.flat[0] = derivatives[0]
        power: Jet | None = None
        for k in range(1, min(self.degree, len(derivatives) - 1) + 1):
            power = h if power is None else power * h
            out += derivatives[k] / math.factorial(k) * power.coeffs
        return Jet(out)

    def reciprocal(self) -> Jet:
        c0 = self.value
        return self.compose([(-1) ** k * math.factorial(k) / c0 ** (k + 1) for k in range(self.degree + 1)])

    def _coerce(self, other: object) -> Jet | float | None:
        if isinstance(other, Jet):
            if other.shape != self.shape:
                raise ValueError(f"Jets of shapes {self.shape} and {other.shape} cannot be combined")
            return other
        if isinstance(other, (Real, np.floating, np.integer)):
            return float(other)
        return None

    def __add__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Jet):
            return Jet(self.coeffs + o.coeffs)
        c = self.coeffs.copy()
        c.flat[0] += o
        return Jet(c)

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet(-self.coeffs)

    def __pos__(self) -> Jet:
        return self

    def __sub__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (-self) + o

    def __mul__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Jet):
            ii, jj, kk = _product_plan(self.shape)
            a, b = self.coeffs.ravel(), o.coeffs.ravel()
            out = np.bincount(kk, weights=a[ii] * b[jj], minlength=a.shape[0])
            return Jet(out.reshape(self.shape))
        return Jet(self.coeffs * o)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Jet):
            return self * o.reciprocal()
        return Jet(self.coeffs / o)

    def __rtruediv__(self, other: object) -> Jet:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.reciprocal() * o

    def __pow__(self, exponent: Union[int, float]) -> Jet:
        if isinstance(exponent, (int, np.integer)) and exponent >= 0:
            result = Jet.constant(1.0, self.shape)
            base: Jet = self
            n = int(exponent)
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        return power_series(self, float(exponent))

    def __repr__(self) -> str:
        return f"Jet(value={self.value!r}, shape={self.shape})"


def power_series(z: Jet, a: float) -> Jet:
    """z**a for real a; z.value > 0 unless a is an integer."""
    c0 = z.value
    derivs = []
    coef = 1.0
    for k in range(z.degree + 1):
        derivs.append(coef * c0 ** (a - k))
        coef *= a - k
    return z.compose(derivs)


Scalar = Union[float, Jet]
