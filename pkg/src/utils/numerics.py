"""Numerical plumbing shared by the toolkit: root finding, differences, grids."""

from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from ..exceptions import GridParameterError, RootNotBracketedError

BISECT_XTOL = 1e-14
BISECT_MAXITER = 200
DIFF_STEP = 1e-5


def find_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = BISECT_XTOL,
    maxiter: int = BISECT_MAXITER,
) -> float:
    """Bracketed bisection root of func on [lo, hi].

    Args:
        func: Continuous scalar function.
        lo: Lower bracket end.
        hi: Upper bracket end.
        xtol: Absolute bracket width at termination.
        maxiter: Iteration cap.

    Returns:
        Root location.

    Raises:
        RootNotBracketedError: If func(lo) and func(hi) share a strict sign.
    """
    f_lo = float(func(lo))
    if f_lo == 0.0:
        return lo
    f_hi = float(func(hi))
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise RootNotBracketedError(lo, hi, f_lo, f_hi)
    return float(bisect(func, lo, hi, xtol=xtol, maxiter=maxiter))


def central_difference(
    func: Callable,
    x,
    step: float = DIFF_STEP,
):
    """Central difference with one Richardson extrapolation level.

    Combines D(h) and D(h/2) as (4 D(h/2) - D(h)) / 3, which cancels the
    O(h^2) term. Works elementwise when func accepts arrays.
    """
    x = np.asarray(x, dtype=float)
    d_full = (func(x + step) - func(x - step)) / (2 * step)
    half = step / 2
    d_half = (func(x + half) - func(x - half)) / (2 * half)
    result = (4 * d_half - d_full) / 3
    return float(result) if np.ndim(result) == 0 else result


def uniform_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """n equally spaced points on [lo, hi], endpoints included."""
    if n < 2:
        raise GridParameterError("n", n, ">= 2")
    return np.linspace(lo, hi, n)


def positive_compositions(total: int, parts: int) -> np.ndarray:
    """All compositions of total into `parts` positive integers, lexicographic.

    Returns an array of shape (count, parts).
    """
    if parts < 1 or total < parts:
        return np.empty((0, max(parts, 0)), dtype=np.intp)
    if parts == 1:
        return np.array([[total]], dtype=np.intp)
    cuts = np.array(list(combinations(range(1, total), parts - 1)), dtype=np.intp)
    bounds = np.hstack([
        np.zeros((len(cuts), 1), dtype=np.intp),
        cuts,
        np.full((len(cuts), 1), total, dtype=np.intp),
    ])
    return np.diff(bounds, axis=1)


def nondecreasing_tuples(n: int, k: int) -> np.ndarray:
    """Index tuples i_1 <= ... <= i_k over range(n), lexicographic. Shape (count, k)."""
    if k < 1:
        return np.empty((1, 0), dtype=np.intp)
    flat = np.fromiter(
        (i for t in combinations_with_replacement(range(n), k) for i in t),
        dtype=np.intp,
    )
    return flat.reshape(-1, k)
