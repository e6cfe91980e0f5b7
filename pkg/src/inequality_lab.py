"""Numerical verification of the entropy inequalities behind the inner-bound evaluation.

Covers the two-point and finite-mixture inequalities for pairs (f, g) with
decreasing derivative ratio, the derivative-ratio property of
f = f_skew, g = g_bsc(., p), convexity of h(p * f^-1(y)), and the chain of
reductions used to prove the derivative-ratio property.

Grid checks use endpoint margins of 1e-3 on (0, 1/2); the reduction chain
works with natural logarithms, where -1 + J(x*p)(1 - 2(x*p)) is the exact
derivative of J(x*p) q(x*p) / (1-2p).
"""

import math
from typing import Callable

import numpy as np

from .entropy_core import (
    f_skew,
    f_skew_d1,
    f_skew_d2,
    f_skew_inv,
    g_bsc,
    g_bsc_d1,
    g_bsc_d2,
)
from .exceptions import DomainError
from .logging import lab_logger as logger
from .models import Verdict
from .utils.numerics import central_difference, find_root, uniform_grid

ScalarFn = Callable[[float], float]

LEMMA_TOL = 1e-10
GRID_TOL = 1e-9
DERIV_TOL = 1e-6
GRID_LO = 0.001
GRID_HI = 0.499
CLAIM1_P_MIN = 1.0 / 6.0
HYPOTHESIS_POINTS = 33


# ============ Mixture inequalities ============

def _solve_intermediate(f: ScalarFn, lo: float, hi: float, target: float) -> float:
    f_lo, f_hi = f(lo), f(hi)
    target = min(max(target, min(f_lo, f_hi)), max(f_lo, f_hi))
    return find_root(lambda x: f(x) - target, lo, hi)


def ratio_hypothesis_holds(f: ScalarFn, g: ScalarFn, lo: float, hi: float,
                           points: int = HYPOTHESIS_POINTS) -> bool:
    """Spot check that f'/g' is non-increasing on interior grid points of [lo, hi]."""
    if hi <= lo:
        return True
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    step = min(1e-5, (hi - lo) / (4 * (points + 1)))
    vf = np.vectorize(f)
    vg = np.vectorize(g)
    ratio = central_difference(vf, xs, step) / central_difference(vg, xs, step)
    return bool(np.all(np.diff(ratio) <= 1e-8 * np.maximum(1.0, np.abs(ratio[1:]))))


def check_lemma1(
    f: ScalarFn,
    g: ScalarFn,
    x1: float,
    x2: float,
    u: float,
    tol: float = LEMMA_TOL,
    spot_check: bool = True,
) -> Verdict:
    """g(x_int) <= u g(x1) + (1-u) g(x2), where f(x_int) = u f(x1) + (1-u) f(x2).

    Raises:
        DomainError: If u is outside [0, 1].
        RootNotBracketedError: If f is not increasing on the interval.
    """
    if not 0.0 <= u <= 1.0:
        raise DomainError("u", u, "[0, 1]")
    lo, hi = min(x1, x2), max(x1, x2)
    details = {"x1": x1, "x2": x2, "u": u}
    if spot_check:
        details["hypothesis_ok"] = ratio_hypothesis_holds(f, g, lo, hi)
        if not details["hypothesis_ok"]:
            logger.warning(f"lemma1: f'/g' not decreasing on [{lo}, {hi}]")
    if hi == lo:
        x_int = lo
    else:
        x_int = _solve_intermediate(f, lo, hi, u * f(x1) + (1.0 - u) * f(x2))
    slack = u * g(x1) + (1.0 - u) * g(x2) - g(x_int)
    details["x_int"] = x_int
    return Verdict("lemma1", slack >= -tol, slack, details=details)


def check_corollary1(
    f: ScalarFn,
    g: ScalarFn,
    weights,
    points,
    tol: float = LEMMA_TOL,
) -> Verdict:
    """g(x_int) <= sum_i u_i g(y_i), where f(x_int) = sum_i u_i f(y_i)."""
    u = np.asarray(weights, dtype=float)
    y = np.asarray(points, dtype=float)
    if u.shape != y.shape or u.size == 0:
        raise DomainError("weights", u.shape, f"nonempty, shape {y.shape}")
    if np.any(u < 0) or abs(u.sum() - 1.0) > 1e-12:
        raise DomainError("weights", u.tolist(), "probability vector")
    lo, hi = float(y.min()), float(y.max())
    target = float(sum(ui * f(float(yi)) for ui, yi in zip(u, y)))
    x_int = lo if hi == lo else _solve_intermediate(f, lo, hi, target)
    slack = float(sum(ui * g(float(yi)) for ui, yi in zip(u, y))) - g(x_int)
    return Verdict("corollary1", slack >= -tol, slack, details={"x_int": x_int, "atoms": int(u.size)})


def _pair(p: float) -> tuple[ScalarFn, ScalarFn]:
    return f_skew, (lambda x: g_bsc(x, p))


def lemma1_suite(
    p: float,
    trials: int = 1000,
    seed: int = 0,
    lo: float = 0.05,
    hi: float = 0.45,
    tol: float = LEMMA_TOL,
) -> Verdict:
    """Random (x1, x2, u) with f = f_skew, g = g_bsc(., p)."""
    f, g = _pair(p)
    rng = np.random.default_rng(seed)
    hypothesis = ratio_hypothesis_holds(f, g, lo, hi)
    worst = math.inf
    for _ in range(trials):
        x1, x2 = rng.uniform(lo, hi, 2)
        u = rng.uniform()
        worst = min(worst, check_lemma1(f, g, x1, x2, u, tol, spot_check=False).min_slack)
    logger.info(f"lemma1 suite p={p}: {trials} trials, min slack {worst:.3e}")
    return Verdict("lemma1", worst >= -tol, worst, p=p, grid=trials,
                   details={"seed": seed, "hypothesis_ok": hypothesis})


def corollary1_suite(
    p: float,
    trials: int = 1000,
    seed: int = 0,
    atoms: int = 5,
    lo: float = 0.05,
    hi: float = 0.45,
    tol: float = LEMMA_TOL,
) -> Verdict:
    """Random mixtures of `atoms` points with f = f_skew, g = g_bsc(., p)."""
    f, g = _pair(p)
    rng = np.random.default_rng(seed)
    worst = math.inf
    for _ in range(trials):
        weights = rng.dirichlet(np.ones(atoms))
        points = rng.uniform(lo, hi, atoms)
        worst = min(worst, check_corollary1(f, g, weights, points, tol).min_slack)
    logger.info(f"corollary1 suite p={p}: {trials} trials, min slack {worst:.3e}")
    return Verdict("corollary1", worst >= -tol, worst, p=p, grid=trials,
                   details={"seed": seed, "atoms": atoms})


# ============ Convexity and derivative ratio ============

def mrs_gerber_convexity(p: float, grid_n: int = 1001, tol: float = GRID_TOL) -> Verdict:
    """Midpoint convexity of y -> h(p * f_skew^-1(y)) on [0, f_skew(1/2)]."""
    if not CLAIM1_P_MIN - 1e-12 <= p <= 0.5:
        raise DomainError("p", p, "[1/6, 1/2]")
    ys = uniform_grid(0.0, f_skew(0.5), grid_n)
    phi = np.array([g_bsc(f_skew_inv(float(y)), p) for y in ys])
    second = phi[:-2] - 2.0 * phi[1:-1] + phi[2:]
    worst = float(second.min()) if second.size else 0.0
    return Verdict("gerber", worst >= -tol, worst, p=p, grid=grid_n)


def derivative_ratio(x, p: float):
    """f'(x) / g'(x) for f = f_skew, g = g_bsc(., p)."""
    return f_skew_d1(x) / g_bsc_d1(x, p)


def claim1_ratio_decreasing(
    p: float,
    grid_n: int = 2001,
    tol: float = LEMMA_TOL,
) -> Verdict:
    """Largest adjacent increase of f'/g' on a grid of (0.001, 0.499).

    The property is only proved for p >= 1/6; below that the verdict reports
    what the grid shows.
    """
    if not 0.0 < p <= 0.5:
        raise DomainError("p", p, "(0, 1/2]")
    details = {"proved_range": p >= CLAIM1_P_MIN - 1e-12}
    if p == 0.5:
        # g is constant, the ratio is +inf everywhere
        details["degenerate"] = True
        return Verdict("claim1", True, 0.0, p=p, grid=grid_n, details=details)
    xs = uniform_grid(GRID_LO, GRID_HI, grid_n)
    ratio = derivative_ratio(xs, p)
    steps = np.diff(ratio)
    increase = float(steps.max())
    details["max_increase"] = increase
    if increase > tol:
        details["first_increase_x"] = float(xs[int(np.argmax(steps > tol))])
    return Verdict("claim1", increase <= tol, -increase, p=p, grid=grid_n, details=details)


def claim1_sweep(
    p_lo: float = CLAIM1_P_MIN,
    p_hi: float = 0.5,
    step: float = 0.01,
    grid_n: int = 2001,
    tol: float = LEMMA_TOL,
) -> Verdict:
    """claim1_ratio_decreasing over p = p_lo, p_lo + step, ... <= p_hi."""
    ps = np.arange(p_lo, p_hi + 1e-12, step)
    failing = []
    worst = math.inf
    for p in ps:
        verdict = claim1_ratio_decreasing(float(p), grid_n, tol)
        worst = min(worst, verdict.min_slack)
        if not verdict.passed:
            failing.append(float(p))
    logger.info(f"claim1 sweep: {len(ps)} values of p, {len(failing)} failing")
    return Verdict("claim1_sweep", not failing, worst, grid=grid_n,
                   details={"p_values": len(ps), "failing_p": failing})


# ============ Reduction chain ============

def _q(x):
    return x * (1.0 - x)


def _j_convolved(x, p):
    """(J_e(x*p), 1 - 2(x*p)) without cancellation near x = 1/2."""
    x = np.asarray(x, dtype=float)
    d = (1.0 - 2.0 * x) * (1.0 - 2.0 * p)
    return np.log1p(2.0 * d / (1.0 - d)), d


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _check_open(x, hi: float = 1.0):
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= hi):
        raise DomainError("x", float(np.atleast_1d(arr)[0]), f"(0, {hi})")
    return arr


def appendix_lhs(x, p: float):
    """J(x*p) q(x*p) / (1 - 2p), natural log."""
    arr = _check_open(x)
    if not 0.0 <= p < 0.5:
        raise DomainError("p", p, "[0, 1/2)")
    j, d = _j_convolved(arr, p)
    z = (1.0 - d) / 2.0
    return _out(j * _q(z) / (1.0 - 2.0 * p))


def appendix_lhs_derivative(x, p: float):
    """-1 + J(x*p)(1 - 2(x*p)); equals -1 at x = 1/2."""
    arr = _check_open(x)
    if not 0.0 <= p <= 0.5:
        raise DomainError("p", p, "[0, 1/2]")
    j, d = _j_convolved(arr, p)
    return _out(-1.0 + j * d)


def appendix_rhs(x):
    """2 (J(x/2) - J((1-x)/2)) / (1/q(x/2) + 1/q((1-x)/2)), natural log."""
    arr = _check_open(x)
    diff = np.log1p(2.0 * (1.0 - 2.0 * arr) / (arr * (1.0 + arr)))
    return _out(2.0 * diff / (1.0 / _q(arr / 2.0) + 1.0 / _q((1.0 - arr) / 2.0)))


def appendix_R(x):
    """Derivative of appendix_rhs by Richardson-extrapolated central differences."""
    _check_open(x, 0.5 + 1e-9)
    return central_difference(appendix_rhs, x)


def appendix_S(x):
    """appendix_lhs_derivative at p = 1/6."""
    return appendix_lhs_derivative(x, CLAIM1_P_MIN)


def appendix_check(
    grid_n: int = 2001,
    lo: float = GRID_LO,
    hi: float = GRID_HI,
    tol: float = GRID_TOL,
) -> tuple[Verdict, np.ndarray]:
    """S(x) <= R(x) on a grid, plus the equality of both sides near x = 1/2.

    Returns:
        (verdict, table) with table columns x, R(x), S(x).
    """
    xs = uniform_grid(lo, hi, grid_n)
    r = appendix_R(xs)
    s = appendix_S(xs)
    worst = float(np.min(r - s))
    edge = 0.5 - 1e-4
    edge_lhs = appendix_lhs(edge, CLAIM1_P_MIN)
    edge_rhs = appendix_rhs(edge)
    edge_ok = abs(edge_lhs) <= 1e-3 and abs(edge_rhs) <= 1e-3
    verdict = Verdict(
        "appendix",
        worst >= -tol and edge_ok,
        worst,
        p=CLAIM1_P_MIN,
        grid=grid_n,
        details={"edge_lhs": edge_lhs, "edge_rhs": edge_rhs},
    )
    logger.info(f"appendix: min R-S {worst:.3e} on {grid_n} points")
    return verdict, np.column_stack([xs, r, s])


def apslope_check(p: float = CLAIM1_P_MIN, grid_n: int = 2001, tol: float = GRID_TOL) -> Verdict:
    """f''/f' <= g''/g' on a grid of (0.001, 0.499) from closed-form derivatives."""
    if not 0.0 <= p < 0.5:
        raise DomainError("p", p, "[0, 1/2)")
    xs = uniform_grid(GRID_LO, GRID_HI, grid_n)
    slack = g_bsc_d2(xs, p) / g_bsc_d1(xs, p) - f_skew_d2(xs) / f_skew_d1(xs)
    worst = float(slack.min())
    return Verdict("apslope", worst >= -tol, worst, p=p, grid=grid_n)


def lhs_reduction_check(p: float, grid_n: int = 2001, tol: float = GRID_TOL) -> Verdict:
    """-1 + J(x*p)(1 - 2(x*p)) <= R(x) on the grid."""
    xs = uniform_grid(GRID_LO, GRID_HI, grid_n)
    worst = float(np.min(appendix_R(xs) - appendix_lhs_derivative(xs, p)))
    return Verdict("lhs_reduction", worst >= -tol, worst, p=p, grid=grid_n)


def appendix_lhs_decreasing_in_p(x: float, p_grid: int = 501) -> Verdict:
    """J(x*p)(1 - 2(x*p)) is non-increasing in p on [0, 1/2] at fixed x."""
    ps = uniform_grid(0.0, 0.5, p_grid)
    values = np.array([appendix_lhs_derivative(x, float(p)) for p in ps])
    increase = float(np.max(np.diff(values)))
    return Verdict("lhs_decreasing_in_p", increase <= LEMMA_TOL, -increase,
                   grid=p_grid, details={"x": x})


def formulation_equivalence(p: float = CLAIM1_P_MIN, grid_n: int = 2001) -> Verdict:
    """The ratio, second-derivative and LHS-derivative forms agree on the grid."""
    ratio = claim1_ratio_decreasing(p, grid_n)
    slope = apslope_check(p, grid_n)
    reduction = lhs_reduction_check(p, grid_n)
    outcomes = {
        "ratio_decreasing": ratio.passed,
        "apslope": slope.passed,
        "lhs_reduction": reduction.passed,
    }
    agree = len(set(outcomes.values())) == 1
    return Verdict(
        "formulation_equivalence",
        agree,
        min(ratio.min_slack, slope.min_slack, reduction.min_slack),
        p=p,
        grid=grid_n,
        details=outcomes,
    )
