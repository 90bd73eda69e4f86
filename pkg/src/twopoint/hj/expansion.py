"""
Near-diagonal expansion of the principal function's first derivatives.

With D = y - x and all coefficients at x (for dS/dx) or at y (for dS/dy),

    dS/dx_i = -g_ij D^j - 1/2 G_ijk D^j D^k - 1/6 G_ijk G^j_ls D^k D^l D^s
              - alpha/2 T_ijk D^j D^k - alpha/12 A_ijkl D^j D^k D^l - c C_ijkl D^j D^k D^l
              - b g_im d_s G^m_jk D^s D^j D^k + O(D^4)
    dS/dy_i =  g_ij D^j - 1/2 G_ijk D^j D^k + 1/6 G_ijk G^j_ls D^k D^l D^s
              + alpha/2 T_ijk D^j D^k - alpha/12 A_ijkl D^j D^k D^l + c C_ijkl D^j D^k D^l
              + b g_im d_s G^m_jk D^s D^j D^k + O(D^4)

The "displayed" variant uses b = 0, c = 1/24. The "corrected" variant uses
b = 1/6, c = 1/6, which is what expanding the boundary momenta of the
Euler-Lagrange solution gives; only it leaves an O(D^4) residual when the
metric is not flat.
"""
from __future__ import annotations

import logging
from typing import Final, Literal, NamedTuple

import numpy as np

from twopoint._typing import FloatArray, PointLike, as_point
from twopoint.diff.config import DiffConfig
from twopoint.diff.engine import gradient_at
from twopoint.errors import UnsupportedError
from twopoint.geometry.connections import a_from_gradient, christoffel_from_derivatives, christoffel_gradient
from twopoint.geometry.lagrangian import Lagrangian
from twopoint.hj.momenta import HJ_DIFF
from twopoint.hj.principal import PrincipalFunction
from twopoint.hj.settings import DEFAULT_SOLVER, SolverSettings

__all__ = (
    "ExpansionReport",
    "ConvergenceEstimate",
    "VARIANTS",
    "expansion_gradients",
    "taylor_consistency",
    "convergence_ratio",
)

log = logging.getLogger(__name__)

Variant = Literal["corrected", "displayed"]

# variant -> (d Gamma coefficient, C coefficient)
VARIANTS: Final[dict[str, tuple[float, float]]] = {
    "corrected": (1.0 / 6.0, 1.0 / 6.0),
    "displayed": (0.0, 1.0 / 24.0),
}


class ExpansionReport(NamedTuple):
    delta: FloatArray
    variant: str
    numeric: tuple[FloatArray, FloatArray]
    expansions: dict[str, tuple[FloatArray, FloatArray]]
    residuals: dict[str, float]

    @property
    def residual(self) -> float:
        return self.residuals[self.variant]

    def to_record(self) -> dict[str, object]:
        return {
            "delta": self.delta.tolist(),
            "variant": self.variant,
            "residual": self.residual,
            "residuals": dict(self.residuals),
        }


class ConvergenceEstimate(NamedTuple):
    """Residual ratio between a step and its half; about 16 for fourth order."""

    ratio: float
    coarse: ExpansionReport
    fine: ExpansionReport


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise UnsupportedError(f"Unknown expansion variant {variant!r}; expected one of {sorted(VARIANTS)}")


def _terms(L: Lagrangian, q: FloatArray, d: FloatArray, cfg: DiffConfig) -> dict[str, FloatArray]:
    local = L.local(q, cfg)
    gamma = christoffel_from_derivatives(local.g, local.dg)
    d_gamma = christoffel_gradient(L.g, q, cfg)
    a = a_from_gradient(local.dt)
    return {
        "g": local.g @ d,
        "gamma": np.einsum("ijk,j,k->i", gamma.lower, d, d),
        "gamma2": np.einsum("ijk,jls,k,l,s->i", gamma.lower, gamma.upper, d, d, d),
        "t": np.einsum("ijk,j,k->i", local.t, d, d),
        "a": np.einsum("ijkl,j,k,l->i", a, d, d, d),
        "c": np.einsum("ijkl,j,k,l->i", local.c, d, d, d),
        "dgamma": np.einsum("im,smjk,s,j,k->i", local.g, d_gamma, d, d, d),
    }


def expansion_gradients(
    L: Lagrangian,
    x: PointLike,
    y: PointLike,
    variant: Variant = "corrected",
    cfg: DiffConfig = HJ_DIFF,
) -> tuple[FloatArray, FloatArray]:
    """Truncated (dS/dx, dS/dy) at (x, y)."""
    _check_variant(variant)
    xa, ya = as_point(x, L.dim), as_point(y, L.dim)
    d = ya - xa
    if not np.any(d):
        return np.zeros(L.dim), np.zeros(L.dim)
    b, c = VARIANTS[variant]
    alpha = L.alpha
    tx = _terms(L, xa, d, cfg)
    ty = _terms(L, ya, d, cfg)
    dx = (
        -tx["g"]
        - 0.5 * tx["gamma"]
        - tx["gamma2"] / 6.0
        - 0.5 * alpha * tx["t"]
        - alpha / 12.0 * tx["a"]
        - c * tx["c"]
        - b * tx["dgamma"]
    )
    dy = (
        ty["g"]
        - 0.5 * ty["gamma"]
        + ty["gamma2"] / 6.0
        + 0.5 * alpha * ty["t"]
        - alpha / 12.0 * ty["a"]
        + c * ty["c"]
        + b * ty["dgamma"]
    )
    return dx, dy


def taylor_consistency(
    L: Lagrangian,
    q: PointLike,
    delta: PointLike,
    settings: SolverSettings = DEFAULT_SOLVER,
    cfg: DiffConfig = HJ_DIFF,
    variant: Variant = "corrected",
    pf: PrincipalFunction | None = None,
) -> ExpansionReport:
    """
    Compare numerical first derivatives of S at (q, q + delta) with the truncated expansions.

    Residuals for every variant are reported; ``residual`` is the selected one.
    """
    _check_variant(variant)
    qa = as_point(q, L.dim)
    d = as_point(delta, L.dim)
    y = qa + d
    pf = pf or PrincipalFunction(L, settings)
    numeric = gradient_at(pf, qa, y, cfg)
    expansions = {name: expansion_gradients(L, qa, y, name, cfg) for name in VARIANTS}  # type: ignore[arg-type]
    residuals = {
        name: max(float(np.max(np.abs(numeric[0] - ex))), float(np.max(np.abs(numeric[1] - ey))))
        for name, (ex, ey) in expansions.items()
    }
    log.debug("Expansion residuals at |delta| = %.3e: %s", float(np.linalg.norm(d)), residuals)
    return ExpansionReport(d, variant, numeric, expansions, residuals)


def convergence_ratio(
    L: Lagrangian,
    q: PointLike,
    delta: PointLike,
    settings: SolverSettings = DEFAULT_SOLVER,
    cfg: DiffConfig = HJ_DIFF,
    variant: Variant = "corrected",
) -> ConvergenceEstimate:
    """residual(delta) / residual(delta / 2)."""
    pf = PrincipalFunction(L, settings)
    d = np.asarray(delta, dtype=np.float64)
    coarse = taylor_consistency(L, q, d, settings, cfg, variant, pf)
    fine = taylor_consistency(L, q, 0.5 * d, settings, cfg, variant, pf)
    tiny = np.finfo(np.float64).tiny
    return ConvergenceEstimate(coarse.residual / max(fine.residual, tiny), coarse, fine)
