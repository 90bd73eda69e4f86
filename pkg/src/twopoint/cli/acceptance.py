"""Acceptance criteria run by ``twopoint verify``."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Final, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from twopoint.analysis import extract_metric, extract_pair, extract_rank4, extract_skewness, sign_table
from twopoint.analysis.signs import SKEWNESS_SIGNS
from twopoint.cli.config import RunConfig
from twopoint.cli.sampling import halton
from twopoint.diff import DiffConfig, SlotPattern, derivative_table, mixed_partial_at, ops
from twopoint.errors import AccuracyWarning, ConfigError, TwoPointError
from twopoint.geometry import Lagrangian, QuarticField
from twopoint.hj import SolverSettings, convergence_ratio, hamilton_jacobi_residual, principal_function, shoot
from twopoint.models import model, pullback_metric, quadratic_model, reference_fields
from twopoint.models.cantoni import displayed_metric, phase_direction, radial_direction
from twopoint.models.descriptor import ModelDescriptor
from twopoint.models.quadratic import random_spd

__all__ = ("Measurement", "Criterion", "CriterionResult", "VerifyContext", "CRITERIA", "criterion", "run_criteria")

log = logging.getLogger(__name__)

JET: Final = DiffConfig(method="taylor-jet")
FD: Final = DiffConfig(method="finite-difference")


class Measurement(NamedTuple):
    """
    A measured value with optional bounds; no bounds means informational.

    ``expected_failure`` marks a known discrepancy: it is reported as XFAIL/XPASS
    and listed in the verify summary, with the compared values in ``details``.
    """

    name: str
    value: float
    upper: Optional[float] = None
    lower: Optional[float] = None
    expected_failure: bool = False
    details: Optional[Mapping[str, float]] = None

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return (self.lower is None or self.value >= self.lower) and (self.upper is None or self.value <= self.upper)

    @property
    def status(self) -> str:
        if self.upper is None and self.lower is None:
            return "INFO"
        if self.expected_failure:
            return "XPASS" if self.passed else "XFAIL"
        return "PASS" if self.passed else "FAIL"

    @property
    def bound(self) -> str:
        if self.lower is not None and self.upper is not None:
            return f"[{self.lower:g}, {self.upper:g}]"
        if self.upper is not None:
            return f"<= {self.upper:.1e}"
        if self.lower is not None:
            return f">= {self.lower:.1e}"
        return ""


@dataclass
class VerifyContext:
    config: RunConfig
    points: int = 5

    def tol(self, name: str, default: float) -> float:
        """Tolerance override by measurement name, then ``all``, then the default."""
        tols = self.config.tolerances
        return float(tols.get(name, tols.get("all", default)))

    def solver(self, **changes: object) -> SolverSettings:
        return self.config.solver.replace(**changes) if changes else self.config.solver

    def sample(self, m: ModelDescriptor, k: int) -> list[np.ndarray]:
        return [m.domain.from_unit(u) for u in halton(m.dim, k)]


CriterionFn = Callable[[VerifyContext], list[Measurement]]


class Criterion(NamedTuple):
    key: str
    title: str
    fn: CriterionFn


class CriterionResult(NamedTuple):
    criterion: Criterion
    measurements: list[Measurement]
    error: Optional[TwoPointError] = None


CRITERIA: dict[str, Criterion] = {}
"""Mapping of (criterion key): (criterion), in registration order."""


def criterion(key: str, title: str) -> Callable[[CriterionFn], CriterionFn]:
    def register(fn: CriterionFn) -> CriterionFn:
        CRITERIA[key] = Criterion(key, title, fn)
        return fn

    return register


def _relative(estimate: np.ndarray, reference: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(reference))))
    return float(np.max(np.abs(np.asarray(estimate) - np.asarray(reference)))) / scale


@criterion("quadratic-exactness", "Quadratic divergence returns M exactly")
def _quadratic(ctx: VerifyContext) -> list[Measurement]:
    out = []
    for label, cfg, metric_tol, higher_tol in (("jet", JET, 1e-10, 1e-8), ("fd", FD, 1e-6, 1e-4)):
        metric_err = higher = 0.0
        for n in (1, 2, 4):
            mat = random_spd(n, seed=n)
            s = quadratic_model(mat).require_potential()
            q = np.full(n, 0.1)
            table = derivative_table(s, q, 4, cfg)
            metric_err = max(metric_err, float(np.max(np.abs(extract_metric(s, q, cfg, table).tensor.dense() - mat))))
            rank4 = extract_rank4(s, q, cfg, table)
            t = extract_skewness(s, q, cfg, table).tensor
            higher = max(higher, t.max_abs(), rank4.q1.max_abs(), rank4.q2.max_abs())
        out.append(Measurement(f"metric_error_{label}", metric_err, ctx.tol(f"metric_error_{label}", metric_tol)))
        out.append(Measurement(f"higher_order_{label}", higher, ctx.tol(f"higher_order_{label}", higher_tol)))
    return out


@criterion("sign-identities", "Order-2 and order-3 combinations agree up to the pinned signs")
def _signs(ctx: VerifyContext) -> list[Measurement]:
    out = []
    for name in ("kl-bernoulli", "kl-categorical:3", "cantoni:2"):
        m = model(name)
        s = m.require_potential()
        worst2 = worst3 = 0.0
        mismatches = 0
        for q in ctx.sample(m, 10):
            table = derivative_table(s, q, 3, JET)
            signs = sign_table(s, q, JET, table)
            worst2 = max(worst2, signs.residual2 / (10.0 * JET.tolerance(2, table.order_scale(2))))
            worst3 = max(worst3, signs.residual3 / (10.0 * JET.tolerance(3, table.order_scale(3))))
            mismatches += sum(1 for k, v in signs.empirical_signs.items() if v != 0 and v != SKEWNESS_SIGNS[k])
        out.append(Measurement(f"{name}.order2", worst2, ctx.tol("order2", 1.0)))
        out.append(Measurement(f"{name}.order3", worst3, ctx.tol("order3", 1.0)))
        out.append(Measurement(f"{name}.sign_mismatches", float(mismatches), 0.0))
    return out


@criterion("fisher-rao", "KL divergences generate the Fisher-Rao metric")
def _fisher_rao(ctx: VerifyContext) -> list[Measurement]:
    tol = ctx.tol("fisher_rao", 1e-5)
    bern = model("kl-bernoulli").require_potential()
    worst = 0.0
    for p in (0.2, 0.5, 0.8):
        g = extract_metric(bern, [p], JET).tensor.dense()[0, 0]
        worst = max(worst, abs(g * p * (1.0 - p) - 1.0))
    cat = model("kl-categorical:3").require_potential()
    g3 = extract_metric(cat, [1.0 / 3.0, 1.0 / 3.0], JET).tensor.dense()
    ref = np.array([[6.0, 3.0], [3.0, 6.0]])
    return [
        Measurement("bernoulli_relative", worst, tol),
        Measurement("categorical_relative", float(np.max(np.abs(g3 - ref) / ref)), tol),
    ]


@criterion("fubini-study", "Overlap metric is the projective pullback")
def _fubini_study(ctx: VerifyContext) -> list[Measurement]:
    m = model("cantoni:2")
    s = m.require_potential()
    pull = displayed = top_eig = kernel = 0.0
    worst: dict[str, float] = {}
    for q in ctx.sample(m, ctx.points):
        g = extract_metric(s, q, JET).tensor.dense()
        pull = max(pull, float(np.max(np.abs(g - pullback_metric(q)))))
        shown = displayed_metric(q)
        diff = np.abs(g - shown)
        if float(np.max(diff)) > displayed:
            displayed = float(np.max(diff))
            i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
            worst = {"row": float(i), "col": float(j), "derived": float(g[i, j]), "displayed": float(shown[i, j])}
        top_eig = max(top_eig, float(np.max(np.linalg.eigvalsh(g))))
        kernel = max(kernel, float(np.max(np.abs(g @ radial_direction(q)))), float(np.max(np.abs(g @ phase_direction(q)))))
    tol = ctx.tol("fubini_study", 1e-4)
    return [
        Measurement("pullback_residual", pull, tol),
        Measurement("negative_semidefinite", max(top_eig, 0.0), ctx.tol("kernel", 1e-6)),
        Measurement("kernel_residual", kernel, ctx.tol("kernel", 1e-6)),
        Measurement("displayed_residual", displayed, tol, expected_failure=True, details=worst),
    ]


def _roundtrip(ctx: VerifyContext, name: str, alpha: float, k: int) -> tuple[float, float, float]:
    """Worst relative g error, relative T error against 2 alpha T, and the input T scale."""
    m = model(name)
    g, t = reference_fields(m)
    pf = principal_function(Lagrangian(g, t, alpha=alpha), ctx.solver())
    g_err = t_err = t_scale = 0.0
    for q in ctx.sample(m, k):
        pair = extract_pair(pf, q, FD)
        t_ref = t.dense(q)
        t_scale = max(t_scale, float(np.max(np.abs(t_ref))))
        g_err = max(g_err, _relative(pair.metric.dense(), g.dense(q)))
        t_err = max(t_err, float(np.max(np.abs(pair.skewness.dense() - 2.0 * alpha * t_ref))))
    return g_err, t_err, t_scale


@criterion("inverse-roundtrip", "Principal function of (g, T) regenerates g and T")
def _inverse(ctx: VerifyContext) -> list[Measurement]:
    out = []
    for name in ("kl-bernoulli", "skewed-categorical:3"):
        g_err, t_err, t_scale = _roundtrip(ctx, name, 0.5, ctx.points)
        out.append(Measurement(f"{name}.metric", g_err, ctx.tol("metric_roundtrip", 1e-3)))
        out.append(Measurement(f"{name}.skewness", t_err / max(1.0, t_scale), ctx.tol("skewness_roundtrip", 5e-3)))
    _, t_zero, t_scale = _roundtrip(ctx, "kl-bernoulli", 0.0, ctx.points)
    out.append(Measurement("kl-bernoulli.alpha0_skewness", t_zero / max(t_scale, 1e-300), ctx.tol("alpha0", 1e-3)))
    return out


@criterion("momenta-identity", "Gradient of the principal function equals the boundary momenta")
def _momenta(ctx: VerifyContext) -> list[Measurement]:
    out = []
    tol = ctx.tol("momenta", 1e-4)
    for name in ("kl-bernoulli", "kl-bernoulli-logit", "quadratic:diag:2,3"):
        m = model(name)
        g, t = reference_fields(m)
        pf = principal_function(Lagrangian(g, t), ctx.solver())
        unit = halton(2 * m.dim, 10, seed=1)
        worst = 0.0
        for u in unit:
            x = m.domain.from_unit(u[: m.dim])
            y = x + 0.05 * (u[m.dim :] - 0.5)
            worst = max(worst, hamilton_jacobi_residual(pf, x, y))
        out.append(Measurement(name, worst, tol))
    return out


@criterion("expansion-order", "Near-diagonal expansion residual is fourth order")
def _expansion(ctx: VerifyContext) -> list[Measurement]:
    g, t = reference_fields(model("kl-bernoulli"))
    L = Lagrangian(g, t, alpha=0.5)
    corrected = convergence_ratio(L, [0.4], [0.01], ctx.solver(), variant="corrected")
    coarse, fine = corrected.coarse.residuals["displayed"], corrected.fine.residuals["displayed"]
    displayed = coarse / max(fine, 1e-300)
    details = {
        "corrected_ratio": corrected.ratio,
        "displayed_ratio": displayed,
        "corrected_residual": corrected.fine.residual,
        "displayed_residual": fine,
    }
    return [
        Measurement("corrected_ratio", corrected.ratio, ctx.tol("ratio_max", 24.0), ctx.tol("ratio_min", 10.0)),
        Measurement("corrected_residual", corrected.fine.residual),
        Measurement("displayed_ratio", displayed, 24.0, 10.0, expected_failure=True, details=details),
    ]


@criterion("rank4-vanishing", "Both rank-4 combinations vanish")
def _rank4(ctx: VerifyContext) -> list[Measurement]:
    tol = ctx.tol("rank4", 1e-3)
    out = []
    for name in ("kl-bernoulli", "kl-categorical:3", "cantoni:2"):
        m = model(name)
        s = m.require_potential()
        worst = 0.0
        for q in ctx.sample(m, ctx.points):
            r = extract_rank4(s, q, JET)
            worst = max(worst, max(r.q1.max_abs(), r.q2.max_abs()) / max(r.scale, 1e-300))
        out.append(Measurement(name, worst, tol))

    g, t = reference_fields(model("kl-bernoulli"))
    pf = principal_function(Lagrangian(g, t, QuarticField.uniform(1, 1.0), 0.5), ctx.solver())
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        for p in (0.4, 0.6):
            r = extract_rank4(pf, [p], FD)
            worst = max(worst, max(r.q1.max_abs(), r.q2.max_abs()) / max(r.scale, 1e-300))
    out.append(Measurement("quartic-principal", worst, tol))
    return out


@criterion("tensoriality", "Extracted metric transforms as a tensor")
def _tensoriality(ctx: VerifyContext) -> list[Measurement]:
    logit = model("kl-bernoulli-logit").require_potential()
    bern = model("kl-bernoulli").require_potential()
    pulled = bern.pullback(lambda th: [1.0 / (1.0 + ops.exp(-th[0]))], label="kl-bernoulli(logit pullback)")
    hessian = SlotPattern.parse("R0R0")
    worst = naive = chart = 0.0
    for theta in (-1.0, 0.0, 0.8):
        p = 1.0 / (1.0 + np.exp(-theta))
        jac = p * (1.0 - p)
        g_theta = extract_metric(logit, [theta], JET).tensor.dense()[0, 0]
        g_p = extract_metric(bern, [p], JET).tensor.dense()[0, 0]
        worst = max(worst, abs(g_theta / jac**2 - g_p) / g_p)
        chart = max(chart, abs(extract_metric(pulled, [theta], JET).tensor.dense()[0, 0] - g_theta) / g_theta)
        # one-point Hessian away from the diagonal
        theta_ref = theta + 0.5
        p_ref = 1.0 / (1.0 + np.exp(-theta_ref))
        h_theta = mixed_partial_at(logit, [theta_ref], [theta], hessian, JET).value
        h_p = mixed_partial_at(bern, [p_ref], [p], hessian, JET).value
        naive = max(naive, abs(h_theta / jac**2 - h_p) / abs(h_p))
    return [
        Measurement("metric_pullback", worst, ctx.tol("tensoriality", 1e-4)),
        Measurement("chart_pullback", chart, ctx.tol("tensoriality", 1e-4)),
        Measurement("naive_hessian_mismatch", naive),
    ]


@criterion("integrator-order", "RK4 errors fall by about 16 per grid doubling")
def _integrator(ctx: VerifyContext) -> list[Measurement]:
    x, y = 0.1, 0.9
    th0, th1 = np.arcsin(np.sqrt(x)), np.arcsin(np.sqrt(y))
    omega = th1 - th0
    v_exact = np.sin(2.0 * th0) * omega
    action_exact = 2.0 * omega**2
    L = Lagrangian(reference_fields(model("kl-bernoulli"))[0])
    v_err, s_err = [], []
    for n in (50, 100, 200):
        result = shoot(L, [x], [y], ctx.solver(grid=n, trust_radius=1.0))
        v_err.append(abs(result.v_init[0] - v_exact))
        s_err.append(abs(result.trajectory.action - action_exact))
    lo, hi = ctx.tol("order_min", 12.0), ctx.tol("order_max", 20.0)
    out = []
    for label, errs in (("velocity", v_err), ("action", s_err)):
        for i in range(2):
            out.append(Measurement(f"{label}_ratio_{50 * 2**i}", errs[i] / max(errs[i + 1], 1e-300), hi, lo))
    return out


def run_criteria(ctx: VerifyContext, only: Sequence[str] | None = None) -> list[CriterionResult]:
    """
    Run the selected criteria in registration order; a library error aborts only its criterion.

    Raises:
        ConfigError: unknown criterion key in ``only``.
    """
    keys = [k for k in CRITERIA if k in only] if only else list(CRITERIA)
    unknown = sorted(set(only or ()) - set(CRITERIA))
    if unknown:
        raise ConfigError(f"Unknown criteria {unknown}; available: {', '.join(CRITERIA)}", "only", unknown)
    results = []
    for key in keys:
        crit = CRITERIA[key]
        log.info("Running %s", key)
        try:
            results.append(CriterionResult(crit, crit.fn(ctx)))
        except TwoPointError as e:
            log.warning("Criterion %s aborted: %s", key, e)
            results.append(CriterionResult(crit, [], e))
    return results

