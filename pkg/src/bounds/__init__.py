"""Rate-region bounds for 3-receiver broadcast channels with two degraded message sets."""

from .base import AuxBatch, BoundEvaluator, pentagon_corners, sum_rate_corners
from .bsscbsc import (
    SUM_RATE_CAP,
    BsscBscChannel,
    bound3_region,
    bsscbsc_verdict,
    capacity_region,
    classify_regime,
    p_max,
    p_o,
    p_o_slope,
    region_a,
    symmetrization_suite,
)
from .generic import (
    Bound3Evaluator,
    InnerBoundEvaluator,
    OuterApproxEvaluator,
    bound3_generic,
    deterministic_y3_region,
    inner_bound,
    outer_bound_inner_approx,
    remark_constraint_gap,
)

__all__ = [
    "AuxBatch",
    "BoundEvaluator",
    "InnerBoundEvaluator",
    "Bound3Evaluator",
    "OuterApproxEvaluator",
    "BsscBscChannel",
    "SUM_RATE_CAP",
    "pentagon_corners",
    "sum_rate_corners",
    "inner_bound",
    "outer_bound_inner_approx",
    "bound3_generic",
    "deterministic_y3_region",
    "remark_constraint_gap",
    "p_max",
    "p_o",
    "p_o_slope",
    "classify_regime",
    "capacity_region",
    "region_a",
    "bound3_region",
    "bsscbsc_verdict",
    "symmetrization_suite",
]
