"""Array aliases and point coercion shared across the package."""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np
import numpy.typing as npt

from twopoint.errors import DimensionError, DomainError

FloatArray = npt.NDArray[np.float64]
Matrix = FloatArray
PointLike = Union[Sequence[float], FloatArray, float]


def as_point(coords: PointLike, dim: int | None = None) -> FloatArray:
    """Coerce coordinates to a 1-d float array, checking length and finiteness."""
    arr = np.atleast_1d(np.asarray(coords, dtype=np.float64))
    if arr.ndim != 1:
        raise DimensionError(f"Point must be a vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"Point has {arr.shape[0]} coordinates, chart dimension is {dim}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"Point has non-finite coordinates: {arr.tolist()}")
    return arr


def as_matrix(m: npt.ArrayLike, dim: int | None = None) -> Matrix:
    """Coerce to a finite square float matrix."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"Matrix must be square, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"Matrix is {arr.shape[0]}x{arr.shape[0]}, expected {dim}x{dim}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("Matrix has non-finite entries")
    return arr
