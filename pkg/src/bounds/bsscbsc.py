"""Closed forms for the BSSC + BSC(p) broadcast channel.

Receivers Y1 and Y2 see the two halves of the binary skew-symmetric channel,
Y3 sees a BSC(p). Everything here is in bits; s is P(X=0|U) restricted to
[0, 1/2] by the s -> 1-s symmetry of the symmetrized auxiliary.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..dmc import (
    AuxDecomposition,
    ChannelTriple,
    bssc_triple,
    bssc_y1,
    bssc_y2,
    bsc,
    conditional_mutual_information,
    marginal_input,
    mutual_information,
    mutual_information_aux,
)
from ..entropy_core import (
    binary_entropy,
    convolve,
    f_skew,
    f_skew_d1,
    f_skew_inv,
    g_bsc,
    g_bsc_d1,
)
from ..exceptions import DomainError
from ..logging import bounds_logger as logger
from ..models import RegimeLabel, Verdict
from ..region import RateRegion, from_point_cloud, max_vertical_gap, triangle
from ..utils.numerics import find_root, uniform_grid
from .base import DEFAULT_WEIGHT_GRID, pentagon_corners
from .generic import bound3_generic

# h(1/4) - 1/2: max over P(X) of min{I(X;Y1), I(X;Y2)}, attained at P(X=0) = 1/2
SUM_RATE_CAP = binary_entropy(0.25) - 0.5

S_GRID = 513
U_GRID = 513
SLOPE_EXPONENTS = (3, 4, 5, 6)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 0.5:
        raise DomainError("p", p, "[0, 1/2]")
    return p


@dataclass(frozen=True)
class BsscBscChannel:
    """The BSSC + BSC(p) channel triple.

    Attributes:
        p: BSC crossover probability in [0, 1/2]
    """
    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))

    @property
    def triple(self) -> ChannelTriple:
        return bssc_triple(self.p)

    @property
    def regime(self) -> RegimeLabel:
        return classify_regime(self.p)

    def capacity_region(self, s_grid: int = S_GRID) -> RateRegion:
        return capacity_region(self.p, s_grid)[0]


# ============ Thresholds ============

@lru_cache(maxsize=1)
def p_max() -> float:
    """Root of 1 - h(p) = h(1/4) - 1/2 on [0, 1/2] (about 0.184)."""
    return find_root(lambda p: 1.0 - binary_entropy(p) - SUM_RATE_CAP, 0.0, 0.5)


def p_o() -> float:
    """(sqrt(3) - 1) / (2 sqrt(3)): the sum-rate constraint is inactive from here on."""
    return (math.sqrt(3.0) - 1.0) / (2.0 * math.sqrt(3.0))


@dataclass
class SlopeEstimate:
    """Boundary slope of the unclipped curve at (0, h(1/4) - 1/2).

    Attributes:
        p: Crossover probability
        estimate: Extrapolated limit of dR1/dR0 as s -> 1/2
        oracle: -1 / (3 (1-2p)^2), from the second-derivative ratio
        samples: (delta, slope) pairs used for the extrapolation
    """
    p: float
    estimate: float
    oracle: float
    samples: list[tuple[float, float]] = field(default_factory=list)


def p_o_slope(p: float | None = None, exponents: tuple[int, ...] = SLOPE_EXPONENTS) -> SlopeEstimate:
    """Extrapolate dR1/dR0 of the unclipped curve at s = 1/2 - 10^-k.

    The slope is -f'(s) / (2 g'(s)), an even function of delta = 1/2 - s,
    so the limit is the intercept of a linear fit in delta^2.
    """
    p = p_o() if p is None else _check_p(p)
    if p >= 0.5:
        raise DomainError("p", p, "[0, 1/2)")
    deltas = np.array([10.0 ** -k for k in exponents])
    s = 0.5 - deltas
    slopes = -f_skew_d1(s) / (2.0 * g_bsc_d1(s, p))
    if len(deltas) > 1:
        estimate = float(np.polyfit(deltas ** 2, slopes, 1)[-1])
    else:
        estimate = float(slopes[0])
    oracle = -1.0 / (3.0 * (1.0 - 2.0 * p) ** 2)
    return SlopeEstimate(p, estimate, oracle, list(zip(deltas.tolist(), slopes.tolist())))


def classify_regime(p: float) -> RegimeLabel:
    """[0, p_max) SumRateOnly, [p_max, p_o) ThreeConstraint, [p_o, 1/2] NoSumRate."""
    p = _check_p(p)
    if p < p_max():
        return RegimeLabel.SUM_RATE_ONLY
    if p < p_o():
        return RegimeLabel.THREE_CONSTRAINT
    return RegimeLabel.NO_SUM_RATE


# ============ Boundary curves ============

def boundary_points(p: float, s_grid: int = S_GRID, clip_sum_rate: bool = True) -> np.ndarray:
    """(R0(s), R1(s)) for s on a uniform grid of [0, 1/2]; shape (s_grid, 2)."""
    p = _check_p(p)
    s = uniform_grid(0.0, 0.5, s_grid)
    g = g_bsc(s, p)
    r0 = 1.0 - g
    r1 = f_skew(s) / 2.0
    if clip_sum_rate:
        r1 = np.minimum(r1, SUM_RATE_CAP - 1.0 + g)
    return np.column_stack([np.clip(r0, 0.0, None), np.clip(r1, 0.0, None)])


def inner_boundary(p: float, s_grid: int = S_GRID) -> RateRegion:
    """Hull of the symmetric-auxiliary boundary with the sum-rate clip.

    Valid as the inner bound for p_max <= p <= 1/2; below p_max a warning is
    logged and the same formula is evaluated.
    """
    p = _check_p(p)
    if p < p_max():
        logger.warning(
            f"inner_boundary: p={p} < p_max={p_max():.6f}, the curve is not the inner bound here"
        )
    return from_point_cloud(boundary_points(p, s_grid, clip_sum_rate=True))


def capacity_region(p: float, s_grid: int = S_GRID) -> tuple[RateRegion, RegimeLabel]:
    """Capacity region and the expression that describes it."""
    regime = classify_regime(p)
    if regime is RegimeLabel.SUM_RATE_ONLY:
        region = triangle(SUM_RATE_CAP)
    elif regime is RegimeLabel.THREE_CONSTRAINT:
        region = from_point_cloud(boundary_points(p, s_grid, clip_sum_rate=True))
    else:
        region = from_point_cloud(boundary_points(p, s_grid, clip_sum_rate=False))
    return region, regime


def clip_active(p: float, s_grid: int = S_GRID) -> bool:
    """True if the sum-rate term is the smaller one somewhere on the s-grid."""
    p = _check_p(p)
    s = uniform_grid(0.0, 0.5, s_grid)
    first = f_skew(s) / 2.0
    second = SUM_RATE_CAP - 1.0 + g_bsc(s, p)
    return bool(np.any(second < first - 1e-12))


# ============ Symmetrization ============

def symmetrize(aux: AuxDecomposition) -> AuxDecomposition:
    """2m-state auxiliary: each state split into (u_i/2, s_i) and (u_i/2, 1-s_i)."""
    return AuxDecomposition(
        np.concatenate([aux.weights / 2.0, aux.weights / 2.0]),
        np.concatenate([aux.conditionals, 1.0 - aux.conditionals]),
    )


def symmetrization_slacks(aux: AuxDecomposition, p: float) -> dict[str, float]:
    """Slacks of the three dominance relations of the symmetrized auxiliary.

    Returns:
        Dict with
          y3_info          I(U~;Y3) - I(U;Y3)
          conditional      I(X~;Y1|U~) - min{I(X;Y1|U), I(X;Y2|U)}
          sum_rate         I(X~;Y1) - (I(X;Y1) + I(X;Y2)) / 2
          identity_error   largest deviation of the three equalities
    """
    p = _check_p(p)
    y1, y2, y3 = bssc_y1(), bssc_y2(), bsc(p)
    sym = symmetrize(aux)
    px, px_sym = marginal_input(aux), marginal_input(sym)

    cond1 = conditional_mutual_information(aux, y1)
    cond2 = conditional_mutual_information(aux, y2)
    cond1_sym = conditional_mutual_information(sym, y1)
    cond2_sym = conditional_mutual_information(sym, y2)
    mi1 = mutual_information(px, y1)
    mi2 = mutual_information(px, y2)
    mi1_sym = mutual_information(px_sym, y1)
    mi2_sym = mutual_information(px_sym, y2)

    identity_error = max(
        abs(cond1_sym - cond2_sym),
        abs(cond1_sym - 0.5 * (cond1 + cond2)),
        abs(mi1_sym - mi2_sym),
    )
    return {
        "y3_info": mutual_information_aux(sym, y3) - mutual_information_aux(aux, y3),
        "conditional": cond1_sym - min(cond1, cond2),
        "sum_rate": mi1_sym - 0.5 * (mi1 + mi2),
        "identity_error": identity_error,
    }


def random_aux(rng: np.random.Generator, max_atoms: int = 4) -> AuxDecomposition:
    m = int(rng.integers(1, max_atoms + 1))
    return AuxDecomposition(rng.dirichlet(np.ones(m)), rng.uniform(0.0, 1.0, m))


def symmetrization_suite(
    ps: tuple[float, ...] = (0.2, 0.25, 0.3, 0.4),
    trials: int = 1000,
    seed: int = 0,
    tol: float = 1e-10,
) -> Verdict:
    """Random auxiliaries; every dominance slack must be >= -tol."""
    rng = np.random.default_rng(seed)
    worst = math.inf
    worst_identity = 0.0
    for p in ps:
        for _ in range(trials):
            slacks = symmetrization_slacks(random_aux(rng), p)
            worst = min(worst, slacks["y3_info"], slacks["conditional"], slacks["sum_rate"])
            worst_identity = max(worst_identity, slacks["identity_error"])
    passed = worst >= -tol and worst_identity <= tol
    logger.info(f"symmetrization: min slack {worst:.3e}, identity error {worst_identity:.3e}")
    return Verdict(
        "symmetrization", passed, worst, grid=trials,
        details={"ps": list(ps), "identity_error": worst_identity, "seed": seed},
    )


def s_int(weights, values) -> float:
    """s in [0, 1/2] with f(s) = sum_i u_i f(s_i), f = f_skew.

    Raises:
        DomainError: If some s_i lies outside [0, 1/2].
    """
    u = np.asarray(weights, dtype=float)
    s = np.asarray(values, dtype=float)
    if np.any(s < 0.0) or np.any(s > 0.5):
        raise DomainError("values", s.tolist(), "[0, 1/2]")
    if u.shape != s.shape:
        raise DomainError("weights", u.shape, f"shape {s.shape}")
    target = float(u @ f_skew(s)) / float(u.sum())
    return f_skew_inv(min(target, f_skew(0.5)))


def s_int_dominance(weights, values, p: float) -> float:
    """sum_i u_i h(s_i * p) - h(s_int * p); nonnegative for p >= 1/6."""
    p = _check_p(p)
    u = np.asarray(weights, dtype=float)
    s = np.asarray(values, dtype=float)
    return float(u @ g_bsc(s, p)) / float(u.sum()) - g_bsc(s_int(u, s), p)


# ============ Outer-bound families ============

def region_a_points(p: float, u_grid: int = U_GRID) -> np.ndarray:
    """Pentagon corners of Region A for u on a uniform grid of [0, 1/2]."""
    p = _check_p(p)
    u = uniform_grid(0.0, 0.5, u_grid)
    s = np.clip((0.5 - u) / (1.0 - u), 0.0, 1.0)
    a = 1.0 - (1.0 - u) * binary_entropy(convolve(s, p)) - u * binary_entropy(p)
    b = (1.0 - u) * binary_entropy(s / 2.0) - 0.5 + u
    c = np.full_like(u, SUM_RATE_CAP)
    return pentagon_corners(np.clip(a, 0.0, None), np.clip(b, 0.0, None), c)


def region_a(p: float, u_grid: int = U_GRID) -> RateRegion:
    """Region A: a two-auxiliary choice in the outer bound sharing P(X=0) = 1/2."""
    return from_point_cloud(region_a_points(p, u_grid))


def bound3_region(
    p: float,
    aux_card: int = 3,
    grid_n: int = 101,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    max_workers: int = 1,
) -> RateRegion:
    """Single-auxiliary outer bound for the symmetric-codebook argument."""
    return bound3_generic(bssc_triple(_check_p(p)), aux_card, grid_n, weight_grid, max_workers)


def bsscbsc_verdict(
    p: float,
    aux_card: int = 2,
    grid_n: int = 101,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    s_grid: int = S_GRID,
    u_grid: int = U_GRID,
    max_workers: int = 1,
    tol: float = 2e-3,
) -> Verdict:
    """Single-auxiliary outer bound against the capacity region, plus the Region A gap.

    Passes when that bound and the capacity region agree within tol in both
    vertical directions.
    """
    capacity, regime = capacity_region(p, s_grid)
    b3 = bound3_region(p, aux_card, grid_n, weight_grid, max_workers)
    gap_a, r0_a = max_vertical_gap(capacity, region_a(p, u_grid))
    up, _ = max_vertical_gap(capacity, b3)
    down, _ = max_vertical_gap(b3, capacity)
    gap_b3 = max(up, down)
    return Verdict(
        "bound3",
        gap_b3 <= tol,
        tol - gap_b3,
        p=p,
        grid=grid_n,
        details={
            "regime": regime.value,
            "gap_inner_regionA": gap_a,
            "r0_at_gap_inner_regionA": r0_a,
            "gap_bound3_capacity": gap_b3,
        },
    )

