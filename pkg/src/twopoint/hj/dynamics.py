"""Euler-Lagrange accelerations."""
from __future__ import annotations

import logging

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.config import DEFAULT_DIFF, DiffConfig
from twopoint.errors import RegularityError, UnsupportedError
from twopoint.geometry.connections import a_from_gradient, christoffel_from_derivatives
from twopoint.geometry.lagrangian import Lagrangian, LocalCoefficients
from twopoint.tensors import invert_matrix

__all__ = ("el_accel", "explicit_accel", "accel_from_local", "MAX_HESSIAN_CONDITION")

log = logging.getLogger(__name__)

MAX_HESSIAN_CONDITION = 1e10


def accel_from_local(
    local: LocalCoefficients,
    alpha: float,
    v: FloatArray,
    max_condition: float = MAX_HESSIAN_CONDITION,
) -> FloatArray:
    """Solve M a = dL/dq - (d^2 L / dv dq) v for precomputed coefficients."""
    g, dg, t, dt, c, dc = local
    hessian = g + alpha * np.einsum("ijk,k->ij", t, v) + 0.5 * np.einsum("ijkl,k,l->ij", c, v, v)
    cond = float(np.linalg.cond(hessian))
    if not cond <= max_condition:
        speed = float(np.linalg.norm(v))
        raise RegularityError(
            f"Velocity Hessian is singular at |v| = {speed:.3e} (condition {cond:.3e})",
            cond,
            speed,
        )
    # dL/dq^l
    force = (
        0.5 * np.einsum("lab,a,b->l", dg, v, v)
        + alpha / 6.0 * np.einsum("labc,a,b,c->l", dt, v, v, v)
        + np.einsum("labcd,a,b,c,d->l", dc, v, v, v, v) / 24.0
    )
    # (d p_l / d q^k) v^k
    force -= (
        np.einsum("kla,a,k->l", dg, v, v)
        + 0.5 * alpha * np.einsum("klab,a,b,k->l", dt, v, v, v)
        + np.einsum("klabc,a,b,c,k->l", dc, v, v, v, v) / 6.0
    )
    return np.linalg.solve(hessian, force)


def el_accel(L: Lagrangian, q: PointLike, v: PointLike, cfg: DiffConfig = DEFAULT_DIFF) -> FloatArray:
    """
    Acceleration from the Euler-Lagrange equations in mass-matrix form.

    Raises:
        RegularityError: the velocity Hessian at (q, v) is numerically singular.
    """
    qa = as_point(q, L.dim)
    va = np.atleast_1d(np.asarray(v, dtype=np.float64))
    return accel_from_local(L.local(qa, cfg), L.alpha, va)


def explicit_accel(
    L: Lagrangian,
    q: PointLike,
    v: PointLike,
    cfg: DiffConfig = DEFAULT_DIFF,
    max_iterations: int = 100,
    tol: float = 1e-15,
) -> FloatArray:
    """
    Cubic-case acceleration by fixed-point iteration of

        a^l = -alpha T^l_jk v^j a^k - Gamma^l_jk v^j v^k - alpha/6 g^lr A_rjks v^j v^k v^s

    Converges when |alpha T v| is small against g.

    Raises:
        UnsupportedError: L has a nonzero quartic field.
        RegularityError: the iteration does not contract.
    """
    if not L.is_cubic:
        raise UnsupportedError("The explicit form covers cubic Lagrangians only")
    qa = as_point(q, L.dim)
    va = np.atleast_1d(np.asarray(v, dtype=np.float64))
    local = L.local(qa, cfg)
    inv = invert_matrix(local.g)
    gamma = christoffel_from_derivatives(local.g, local.dg, g_inv=inv).upper
    t_up = np.einsum("lm,mjk->ljk", inv, local.t)
    a_raised = np.einsum("lr,rjks->ljks", inv, a_from_gradient(local.dt))

    fixed = -np.einsum("ljk,j,k->l", gamma, va, va) - L.alpha / 6.0 * np.einsum(
        "ljks,j,k,s->l", a_raised, va, va, va
    )
    coupling = -L.alpha * np.einsum("ljk,j->lk", t_up, va)
    acc = fixed
    for i in range(max_iterations):
        nxt = fixed + coupling @ acc
        step = float(np.max(np.abs(nxt - acc)))
        acc = nxt
        if step <= tol * max(1.0, float(np.max(np.abs(acc)))):
            log.debug("explicit_accel converged after %d iterations", i + 1)
            return acc
        if not np.all(np.isfinite(acc)):
            break
    raise RegularityError(
        "Explicit Euler-Lagrange iteration did not contract",
        float(np.max(np.abs(np.linalg.eigvals(coupling)))),
        float(np.linalg.norm(va)),
    )
