"""Binary entropy and related scalar kernels.

All information quantities are in bits. Every function accepts either a
scalar or a numpy array and returns the same kind (python float for scalars).
"""

import math

import numpy as np
from scipy.special import entr

from .exceptions import DomainError
from .utils.numerics import find_root

LN2 = math.log(2.0)
_EPS = 1e-12


def _as_array(name: str, x, lo: float = 0.0, hi: float = 1.0, open_interval: bool = False):
    arr = np.asarray(x, dtype=float)
    if open_interval:
        bad = (arr <= lo) | (arr >= hi)
        domain = f"({lo}, {hi})"
    else:
        bad = (arr < lo - _EPS) | (arr > hi + _EPS)
        domain = f"[{lo}, {hi}]"
    if np.any(bad) or np.any(np.isnan(arr)):
        offending = arr[bad].flat[0] if np.any(bad) else float("nan")
        raise DomainError(name, float(offending), domain)
    if not open_interval:
        arr = np.clip(arr, lo, hi)
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def entropy(dist, axis: int = -1):
    """Shannon entropy in bits of probability vectors along `axis` (0 log 0 = 0)."""
    arr = np.clip(np.asarray(dist, dtype=float), 0.0, None)
    return _out(np.sum(entr(arr), axis=axis) / LN2)


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2 (1-x)."""
    arr = _as_array("x", x)
    return _out((entr(arr) + entr(1.0 - arr)) / LN2)


def binary_entropy_inv(y: float) -> float:
    """Unique x in [0, 1/2] with h(x) = y."""
    y = float(_as_array("y", y))
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return find_root(lambda x: binary_entropy(x) - y, 0.0, 0.5)


def convolve(x, p):
    """x * p = x(1-p) + p(1-x): a Bernoulli(x) bit passed through BSC(p)."""
    x = _as_array("x", x)
    p = _as_array("p", p)
    return _out(x * (1.0 - p) + p * (1.0 - x))


def log_ratio(x, base: float = 2.0):
    """J(x) = log((1-x)/x); antisymmetric about 1/2."""
    arr = _as_array("x", x, open_interval=True)
    return _out(np.log1p((1.0 - 2.0 * arr) / arr) / math.log(base))


def quadratic_term(x):
    """x(1-x); peaks at 1/4 for x = 1/2."""
    arr = _as_array("x", x)
    return _out(arr * (1.0 - arr))


def f_skew(x):
    """f(x) = h(x/2) + h((1-x)/2) - 1."""
    arr = _as_array("x", x)
    return _out(binary_entropy(arr / 2.0) + binary_entropy((1.0 - arr) / 2.0) - 1.0)


def f_skew_inv(y: float) -> float:
    """Unique x in [0, 1/2] with f_skew(x) = y, for y in [0, f_skew(1/2)]."""
    top = f_skew(0.5)
    y = float(y)
    if y < -_EPS or y > top + _EPS:
        raise DomainError("y", y, f"[0, {top}]")
    if y <= 0.0:
        return 0.0
    if y >= top:
        return 0.5
    return find_root(lambda x: f_skew(x) - y, 0.0, 0.5)


def g_bsc(x, p):
    """g(x) = h(x * p)."""
    return binary_entropy(convolve(x, p))


def f_skew_d1(x):
    """f'(x) = J(x/2)/2 - J((1-x)/2)/2, written as one log1p."""
    arr = _as_array("x", x, open_interval=True)
    return _out(0.5 * np.log1p(2.0 * (1.0 - 2.0 * arr) / (arr * (1.0 + arr))) / LN2)


def g_bsc_d1(x, p):
    """g'(x) = (1-2p) J(x*p), with 1 - 2(x*p) = (1-2x)(1-2p)."""
    arr = _as_array("x", x, open_interval=True)
    p = _as_array("p", p)
    d = (1.0 - 2.0 * arr) * (1.0 - 2.0 * p)
    return _out((1.0 - 2.0 * p) * np.log1p(2.0 * d / (1.0 - d)) / LN2)


def f_skew_d2(x):
    """f''(x) = -(1/(4 ln 2)) (1/q(x/2) + 1/q((1-x)/2))."""
    arr = _as_array("x", x, open_interval=True)
    a = arr / 2.0
    b = (1.0 - arr) / 2.0
    return _out(-(1.0 / (a * (1.0 - a)) + 1.0 / (b * (1.0 - b))) / (4.0 * LN2))


def g_bsc_d2(x, p):
    """g''(x) = -(1-2p)^2 / (ln 2 * q(x*p))."""
    arr = _as_array("x", x, open_interval=True)
    p = _as_array("p", p)
    z = arr * (1.0 - p) + p * (1.0 - arr)
    return _out(-((1.0 - 2.0 * p) ** 2) / (LN2 * z * (1.0 - z)))
