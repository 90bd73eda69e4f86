"""Levi-Civita and dual connection coefficients, and the A-tensor."""
from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from twopoint._typing import FloatArray, Matrix, PointLike, as_point
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.diff.fd import field_gradient
from twopoint.errors import DimensionError
from twopoint.geometry.fields import MetricField, SkewnessField
from twopoint.tensors import MAX_CONDITION, invert_matrix

__all__ = (
    "Christoffel",
    "christoffel_lc",
    "christoffel_from_derivatives",
    "christoffel_gradient",
    "dual_christoffel",
    "a_tensor",
    "a_from_gradient",
    "duality_residual",
)

log = logging.getLogger(__name__)


class Christoffel(NamedTuple):
    """upper[i, j, k] = Gamma^i_jk, lower[i, j, k] = Gamma_ijk = g_il Gamma^l_jk."""

    upper: FloatArray
    lower: FloatArray


def christoffel_from_derivatives(
    g: Matrix,
    dg: FloatArray,
    max_condition: float = MAX_CONDITION,
    g_inv: Matrix | None = None,
) -> Christoffel:
    """Levi-Civita symbols from g and dg[k, i, j] = d_k g_ij."""
    # lower[l, j, k] = (d_j g_lk + d_k g_lj - d_l g_jk) / 2
    lower = 0.5 * (np.einsum("jlk->ljk", dg) + np.einsum("klj->ljk", dg) - dg)
    inv = invert_matrix(g, max_condition) if g_inv is None else g_inv
    upper = np.einsum("il,ljk->ijk", inv, lower)
    return Christoffel(upper, lower)


def christoffel_lc(g: MetricField, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> Christoffel:
    """
    Levi-Civita connection coefficients of ``g`` at ``q``.

    Raises:
        SingularityError: g(q) cannot be inverted.
    """
    qa = as_point(q, g.dim)
    return christoffel_from_derivatives(g.dense(qa), g.gradient(qa, cfg))


def christoffel_gradient(g: MetricField, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> FloatArray:
    """out[s, i, j, k] = d_s Gamma^i_jk, by differencing the Levi-Civita symbols."""
    qa = as_point(q, g.dim)
    return field_gradient(lambda p: christoffel_lc(g, p, cfg).upper, qa, cfg)


def _check_dims(g: MetricField, t: SkewnessField) -> None:
    if g.dim != t.dim:
        raise DimensionError(f"Metric dimension {g.dim} != skewness dimension {t.dim}")


def dual_christoffel(
    g: MetricField,
    t: SkewnessField,
    q: PointLike,
    sign: int,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> FloatArray:
    """Gamma^i_jk +/- g^il T_ljk for ``sign`` = +1 / -1."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    _check_dims(g, t)
    qa = as_point(q, g.dim)
    gm = g.dense(qa)
    inv = invert_matrix(gm)
    lc = christoffel_from_derivatives(gm, g.gradient(qa, cfg), g_inv=inv)
    raised = np.einsum("il,ljk->ijk", inv, t.dense(qa))
    return lc.upper + sign * raised


def a_from_gradient(dt: FloatArray) -> FloatArray:
    """A[r, j, k, s] = d_s T_jkr + d_k T_jrs + d_j T_rks - d_r T_jks from dt[s, i, j, k] = d_s T_ijk."""
    return (
        np.einsum("sjkr->rjks", dt)
        + np.einsum("kjrs->rjks", dt)
        + np.einsum("jrks->rjks", dt)
        - dt
    )


def a_tensor(t: SkewnessField, q: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> FloatArray:
    """Dense A-tensor; symmetric in its last three indices only."""
    return a_from_gradient(t.gradient(as_point(q, t.dim), cfg))


def duality_residual(
    g: MetricField,
    t: SkewnessField,
    q: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
) -> float:
    """max |d_i g_jk - Gamma+^m_ij g_mk - Gamma-^m_ik g_jm| over all index triples."""
    _check_dims(g, t)
    qa = as_point(q, g.dim)
    gm = g.dense(qa)
    dg = g.gradient(qa, cfg)
    plus = dual_christoffel(g, t, qa, 1, cfg)
    minus = dual_christoffel(g, t, qa, -1, cfg)
    residual = dg - np.einsum("mij,mk->ijk", plus, gm) - np.einsum("mik,jm->ijk", minus, gm)
    return float(np.max(np.abs(residual)))
