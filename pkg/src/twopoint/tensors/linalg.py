"""Symmetric matrix inversion and index raising."""
from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
import scipy.linalg

from twopoint._typing import FloatArray, Matrix, as_matrix
from twopoint.errors import DimensionError, SingularityError, SymmetryError
from twopoint.tensors.sym import SymTensor

__all__ = ("invert_matrix", "condition_number", "raise_first_index", "MAX_CONDITION", "SYMMETRY_TOL")

log = logging.getLogger(__name__)

MAX_CONDITION = 1e12
SYMMETRY_TOL = 1e-10


def _symmetric_part(m: npt.ArrayLike, tol: float = SYMMETRY_TOL) -> Matrix:
    arr = as_matrix(m)
    scale = max(1.0, float(np.max(np.abs(arr))))
    asym = float(np.max(np.abs(arr - arr.T)))
    if asym > tol * scale:
        raise SymmetryError(f"Matrix is not symmetric (max |m - m.T| = {asym:.3e})")
    return 0.5 * (arr + arr.T)


def condition_number(m: npt.ArrayLike) -> float:
    """Spectral condition number of a symmetric matrix; inf when singular."""
    w = scipy.linalg.eigvalsh(_symmetric_part(m))
    smallest = float(np.min(np.abs(w)))
    if smallest == 0.0:
        return float("inf")
    return float(np.max(np.abs(w))) / smallest


def invert_matrix(m: npt.ArrayLike, max_condition: float = MAX_CONDITION) -> Matrix:
    """
    Invert a symmetric matrix by eigendecomposition.

    Raises:
        SymmetryError: m is not symmetric to tolerance.
        SingularityError: condition number exceeds ``max_condition``.
    """
    sym = _symmetric_part(m)
    w, v = scipy.linalg.eigh(sym)
    smallest = float(np.min(np.abs(w)))
    cond = float("inf") if smallest == 0.0 else float(np.max(np.abs(w))) / smallest
    if cond > max_condition:
        raise SingularityError(f"Matrix is ill-conditioned (condition {cond:.3e} > {max_condition:.1e})", cond)
    log.debug("Inverting %dx%d matrix, condition %.3e", sym.shape[0], sym.shape[0], cond)
    inv = (v / w) @ v.T
    return 0.5 * (inv + inv.T)


def raise_first_index(m_inv: npt.ArrayLike, t: SymTensor) -> FloatArray:
    """out[i, j, k] = sum_l m_inv[i, l] t[l, j, k]."""
    inv = as_matrix(m_inv)
    if t.rank != 3:
        raise DimensionError(f"Expected a rank-3 tensor, got rank {t.rank}")
    if inv.shape[0] != t.dim:
        raise DimensionError(f"Inverse metric is {inv.shape[0]}x{inv.shape[0]}, tensor dimension is {t.dim}")
    return np.einsum("il,ljk->ijk", inv, t.dense())
