"""Fully symmetric covariant tensors stored by sorted multi-index."""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt
from typing_extensions import Self

from twopoint._typing import FloatArray
from twopoint.errors import DimensionError

__all__ = ("SymTensor", "sym_get", "symmetrize", "MAX_RANK")

MAX_RANK = 4


@lru_cache(maxsize=None)
def _layout(dim: int, rank: int) -> tuple[tuple[tuple[int, ...], ...], dict[tuple[int, ...], int]]:
    """Sorted multi-indices of a (dim, rank) tensor and their storage positions."""
    indices = tuple(combinations_with_replacement(range(dim), rank))
    return indices, {idx: pos for pos, idx in enumerate(indices)}


@lru_cache(maxsize=None)
def _dense_map(dim: int, rank: int) -> npt.NDArray[np.intp]:
    """Dense (dim,)*rank array of storage positions."""
    indices, _ = _layout(dim, rank)
    lookup = np.empty((dim,) * rank, dtype=np.intp)
    for pos, idx in enumerate(indices):
        for perm in set(permutations(idx)):
            lookup[perm] = pos
    lookup.setflags(write=False)
    return lookup


def _check_shape(dim: int, rank: int) -> None:
    if dim < 1:
        raise DimensionError(f"Tensor dimension must be positive, got {dim}")
    if not 1 <= rank <= MAX_RANK:
        raise DimensionError(f"Tensor rank must be in 1..{MAX_RANK}, got {rank}")


class SymTensor:
    """
    Fully symmetric covariant tensor of rank 1-4 at a point.

    Values are stored once per non-decreasing multi-index, so permutation
    symmetry is structural. Instances are immutable.
    """

    __slots__ = ("dim", "rank", "_data")

    def __init__(self, dim: int, rank: int, data: npt.ArrayLike | None = None) -> None:
        _check_shape(dim, rank)
        size = math.comb(dim + rank - 1, rank)
        if data is None:
            arr = np.zeros(size)
        else:
            arr = np.array(data, dtype=np.float64).reshape(-1)
            if arr.shape[0] != size:
                raise DimensionError(
                    f"Rank-{rank} symmetric tensor in dimension {dim} needs {size} values, got {arr.shape[0]}"
                )
        arr.setflags(write=False)
        self.dim = dim
        self.rank = rank
        self._data = arr

    @classmethod
    def zeros(cls, dim: int, rank: int) -> Self:
        return cls(dim, rank)

    @classmethod
    def identity(cls, dim: int) -> Self:
        """Rank-2 Kronecker delta."""
        return cls.from_dense(np.eye(dim))

    @classmethod
    def from_dense(cls, full: npt.ArrayLike) -> Self:
        """Symmetrize a dense (n,)*r array."""
        return symmetrize(full)  # type: ignore[return-value]

    @classmethod
    def from_function(cls, dim: int, rank: int, fn: Any) -> Self:
        """Build from ``fn(idx) -> float`` called once per sorted multi-index."""
        _check_shape(dim, rank)
        indices, _ = _layout(dim, rank)
        return cls(dim, rank, [fn(idx) for idx in indices])

    @property
    def values(self) -> FloatArray:
        """Read-only storage in sorted multi-index order."""
        return self._data

    @property
    def indices(self) -> tuple[tuple[int, ...], ...]:
        return _layout(self.dim, self.rank)[0]

    @property
    def size(self) -> int:
        return self._data.shape[0]

    def dense(self) -> FloatArray:
        """Full (n,)*r array."""
        return self._data[_dense_map(self.dim, self.rank)]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._data))) if self.size else 0.0

    def allclose(self, other: SymTensor | npt.ArrayLike, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        other_values = _coerce_values(self, other)
        return bool(np.allclose(self._data, other_values, atol=atol, rtol=rtol))

    def to_record(self) -> dict[str, Any]:
        return {"dim": self.dim, "rank": self.rank, "values": self._data.tolist()}

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> Self:
        return cls(int(record["dim"]), int(record["rank"]), record["values"])

    def __getitem__(self, idx: Sequence[int]) -> float:
        return sym_get(self, idx)

    def __add__(self, other: SymTensor) -> SymTensor:
        return SymTensor(self.dim, self.rank, self._data + _coerce_values(self, other))

    def __sub__(self, other: SymTensor) -> SymTensor:
        return SymTensor(self.dim, self.rank, self._data - _coerce_values(self, other))

    def __mul__(self, scale: float) -> SymTensor:
        return SymTensor(self.dim, self.rank, self._data * float(scale))

    __rmul__ = __mul__

    def __neg__(self) -> SymTensor:
        return SymTensor(self.dim, self.rank, -self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.dim == other.dim and self.rank == other.rank and bool(np.array_equal(self._data, other._data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SymTensor(dim={self.dim}, rank={self.rank}, values={self._data.tolist()})"


def _coerce_values(t: SymTensor, other: SymTensor | npt.ArrayLike) -> FloatArray:
    if isinstance(other, SymTensor):
        if (other.dim, other.rank) != (t.dim, t.rank):
            raise DimensionError(
                f"Cannot combine rank-{t.rank} dim-{t.dim} tensor with rank-{other.rank} dim-{other.dim}"
            )
        return other.values
    return symmetrize(np.asarray(other, dtype=np.float64)).values


def sym_get(t: SymTensor, idx: Sequence[int]) -> float:
    """Value of ``t`` at ``idx`` (any ordering)."""
    if len(idx) != t.rank:
        raise DimensionError(f"Index {tuple(idx)} has length {len(idx)}, tensor rank is {t.rank}")
    for i in idx:
        if not 0 <= i < t.dim:
            raise DimensionError(f"Index {i} out of range for dimension {t.dim}")
    _, positions = _layout(t.dim, t.rank)
    return float(t.values[positions[tuple(sorted(idx))]])


def symmetrize(full: npt.ArrayLike) -> SymTensor:
    """Average a dense (n,)*r array over all index permutations."""
    arr = np.asarray(full, dtype=np.float64)
    rank = arr.ndim
    if rank == 0:
        raise DimensionError("Cannot symmetrize a scalar")
    dim = arr.shape[0]
    if any(s != dim for s in arr.shape):
        raise DimensionError(f"Array of shape {arr.shape} is not (n,)*r")
    _check_shape(dim, rank)
    perms = list(permutations(range(rank)))
    total = np.zeros_like(arr)
    for perm in perms:
        total += np.transpose(arr, perm)
    total /= len(perms)
    indices, _ = _layout(dim, rank)
    picks = tuple(np.array(indices, dtype=np.intp).T)
    return SymTensor(dim, rank, total[picks])
