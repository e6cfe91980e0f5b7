"""Grid evaluation of the superposition inner bound, the two-auxiliary outer
bound and the single-auxiliary outer bound for a binary-input channel triple.
"""

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..dmc import (
    ChannelTriple,
    aux_from_joint,
    conditional_mutual_information,
    is_deterministic,
    marginal_input,
    mutual_information,
    mutual_information_aux,
)
from ..entropy_core import entropy
from ..exceptions import PreconditionError
from ..logging import bounds_logger as logger
from ..region import RateRegion, from_point_cloud, max_vertical_gap, pareto_frontier
from ..utils.numerics import nondecreasing_tuples, uniform_grid
from .base import (
    DEFAULT_WEIGHT_GRID,
    AuxBatch,
    BoundEvaluator,
    pentagon_corners,
    sum_rate_corners,
)

DET_Y3_GRID = 1001


class InnerBoundEvaluator(BoundEvaluator):
    """R0 <= I(U;Y3), R1 <= min I(X;Yk|U), R0 + R1 <= min I(X;Yk)."""

    name = "inner"

    def batches(self) -> Iterator[AuxBatch]:
        return self.canonical_batches()

    def corner_points(self, batch: AuxBatch) -> np.ndarray:
        f = self.functionals(batch)
        return pentagon_corners(
            f["a"],
            np.minimum(f["b1"], f["b2"]),
            np.minimum(f["c1"], f["c2"]),
        )

    def check_point(self, batch: AuxBatch) -> np.ndarray:
        """Slack of each emitted corner in the outer-bound inequalities with U1 = U2 = U."""
        f = self.functionals(batch)
        corners = self.corner_points(batch)
        a = np.tile(f["a"], 2)
        cap = np.tile(
            np.minimum.reduce([f["a"] + f["b1"], f["a"] + f["b2"], f["c1"], f["c2"]]), 2
        )
        return np.minimum(a - corners[:, 0], cap - corners.sum(axis=1))

    def min_outer_slack(self) -> float:
        """Smallest slack of check_point over the whole grid."""
        slacks = self.map_batches(lambda b: np.array([self.check_point(b).min()]))
        return float(np.min(np.concatenate(slacks)))


class Bound3Evaluator(BoundEvaluator):
    """R0 <= I(U;Y3), R0 + R1 <= min(I(U;Y3) + min I(X;Yk|U), min I(X;Yk))."""

    name = "bound3"

    def batches(self) -> Iterator[AuxBatch]:
        return self.canonical_batches()

    def corner_points(self, batch: AuxBatch) -> np.ndarray:
        f = self.functionals(batch)
        total = np.minimum(
            f["a"] + np.minimum(f["b1"], f["b2"]),
            np.minimum(f["c1"], f["c2"]),
        )
        return sum_rate_corners(f["a"], total)


class OuterApproxEvaluator(BoundEvaluator):
    """Truncated-cardinality evaluation of the two-auxiliary outer bound.

    P(X=0) = x is gridded first; for each x the candidates for U1 and U2
    are decompositions with k <= aux_card atoms whose first k-1 conditionals
    lie on the s-grid and whose last conditional is solved from x. Every
    pair (U1, U2) with the same x is combined. With finite cardinality and
    grids this is an inner approximation of the outer-bound region.

    Args:
        r0_common_constraint: Also impose R0 <= min{I(U1;Y1), I(U2;Y2)}.
    """

    name = "outer-approx"

    def __init__(self, *args, r0_common_constraint: bool = False, **kwargs):
        super().__init__(*args, **kwargs)
        self.r0_common_constraint = r0_common_constraint

    def _candidates(self, xi: int) -> AuxBatch:
        x = self.s_values[xi]
        weights = [np.ones((1, 1))]
        values = [np.full((1, 1), x)]
        for k in range(2, self.aux_card + 1):
            comp = self.compositions(k)
            if len(comp) == 0:
                continue
            head = self.s_values[nondecreasing_tuples(self.grid_n, k - 1)]
            w = np.tile(comp, (len(head), 1))
            s_head = np.repeat(head, len(comp), axis=0)
            last = (x - np.sum(w[:, :-1] * s_head, axis=1)) / w[:, -1]
            ok = (last >= -1e-12) & (last <= 1.0 + 1e-12)
            weights.append(w[ok])
            values.append(np.column_stack([s_head[ok], np.clip(last[ok], 0.0, 1.0)]))
        # pad to a common width with zero-weight atoms
        width = max(v.shape[1] for v in values)
        w_all = np.vstack([np.pad(w, ((0, 0), (0, width - w.shape[1]))) for w in weights])
        s_all = np.vstack([
            np.pad(v, ((0, 0), (0, width - v.shape[1])), constant_values=0.5) for v in values
        ])
        return AuxBatch(w_all, s=s_all)

    def batches(self) -> Iterator[AuxBatch]:
        for xi in range(self.grid_n):
            yield self._candidates(xi)

    def corner_points(self, batch: AuxBatch) -> np.ndarray:
        f = self.functionals(batch)
        # every candidate in a batch shares x, so the sum-rate cap is one number
        cap = float(np.min(np.minimum(f["c1"], f["c2"])))
        if self.r0_common_constraint:
            r0_terms = (np.minimum(f["a"], f["i1"]), np.minimum(f["a"], f["i2"]))
        else:
            r0_terms = (f["a"], f["a"])
        first = pareto_frontier(np.column_stack([r0_terms[0], f["a"] + f["b1"]]))
        second = pareto_frontier(np.column_stack([r0_terms[1], f["a"] + f["b2"]]))
        r0_cap = np.minimum.outer(first[:, 0], second[:, 0]).ravel()
        total = np.minimum(np.minimum.outer(first[:, 1], second[:, 1]).ravel(), cap)
        return sum_rate_corners(r0_cap, total)

    def count_auxiliaries(self) -> int:
        return sum(len(self._candidates(xi)) for xi in range(self.grid_n))


def inner_bound(
    triple: ChannelTriple,
    aux_card: int = 3,
    grid_n: int = 101,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    max_workers: int = 1,
) -> RateRegion:
    """Superposition inner bound by grid search over auxiliaries.

    Args:
        triple: Binary-input channel triple
        aux_card: Largest auxiliary alphabet size
        grid_n: Resolution of the s-grid on [0, 1]
        weight_grid: Resolution of the weight simplex
        max_workers: Worker threads; the merge order is fixed

    Returns:
        Hull of all pentagon corners.
    """
    with InnerBoundEvaluator(triple, aux_card, grid_n, weight_grid, max_workers) as ev:
        return ev.evaluate()


def outer_bound_inner_approx(
    triple: ChannelTriple,
    aux_card: int = 3,
    grid_n: int = 101,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    max_workers: int = 1,
    r0_common_constraint: bool = False,
) -> RateRegion:
    """Inner approximation of the two-auxiliary outer bound (see OuterApproxEvaluator)."""
    with OuterApproxEvaluator(
        triple, aux_card, grid_n, weight_grid, max_workers,
        r0_common_constraint=r0_common_constraint,
    ) as ev:
        return ev.evaluate()


def bound3_generic(
    triple: ChannelTriple,
    aux_card: int = 3,
    grid_n: int = 101,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    max_workers: int = 1,
) -> RateRegion:
    """Single-auxiliary outer bound by grid search."""
    with Bound3Evaluator(triple, aux_card, grid_n, weight_grid, max_workers) as ev:
        return ev.evaluate()


def deterministic_y3_region(triple: ChannelTriple, grid_n: int = DET_Y3_GRID) -> RateRegion:
    """Convex closure of the inner-bound regions for U = Y3 and U = empty.

    Raises:
        PreconditionError: If Y3 is not a deterministic function of X.
    """
    if not is_deterministic(triple.y3):
        raise PreconditionError("Y3 is not a deterministic function of X")
    y3 = triple.y3.matrix
    points = []
    for x in uniform_grid(0.0, 1.0, grid_n):
        px = np.array([x, 1.0 - x])
        cap = min(mutual_information(px, triple.y1), mutual_information(px, triple.y2))
        # U = empty
        points.append((0.0, max(cap, 0.0)))
        # U = Y3: joint of (Y3, X)
        aux = aux_from_joint((px[:, None] * y3).T)
        a = float(entropy(px @ y3))
        b = min(
            conditional_mutual_information(aux, triple.y1),
            conditional_mutual_information(aux, triple.y2),
        )
        points.extend(pentagon_corners(np.array([a]), np.array([b]), np.array([cap])).tolist())
    region = from_point_cloud(np.array(points))
    logger.info(
        f"det-y3: R0 max {region.r0_max:.6f}, sum-rate cap {region.r1_max:.6f}"
    )
    return region


@dataclass
class RemarkComparison:
    """Outer approximation with and without R0 <= min{I(U1;Y1), I(U2;Y2)}."""
    plain: RateRegion
    constrained: RateRegion
    gap: float
    r0_at_gap: float


def remark_constraint_gap(
    triple: ChannelTriple,
    aux_card: int = 2,
    grid_n: int = 41,
    weight_grid: int = DEFAULT_WEIGHT_GRID,
    max_workers: int = 1,
) -> RemarkComparison:
    """Empirical effect of the extra R0 constraint on the outer approximation.

    The reported gap is the largest amount by which the plain region rises
    above the constrained one (0 when the constraint is inactive on the grid).
    """
    plain = outer_bound_inner_approx(triple, aux_card, grid_n, weight_grid, max_workers)
    constrained = outer_bound_inner_approx(
        triple, aux_card, grid_n, weight_grid, max_workers, r0_common_constraint=True
    )
    gap, r0 = max_vertical_gap(constrained, plain)
    logger.info(f"remark constraint: gap {gap:.3e} at R0={r0:.6f}")
    return RemarkComparison(plain, constrained, gap, r0)


def aux_functionals(triple: ChannelTriple, aux) -> dict[str, float]:
    """The scalar functionals of one AuxDecomposition (for spot checks)."""
    px = marginal_input(aux)
    return {
        "a": mutual_information_aux(aux, triple.y3),
        "b1": conditional_mutual_information(aux, triple.y1),
        "b2": conditional_mutual_information(aux, triple.y2),
        "c1": mutual_information(px, triple.y1),
        "c2": mutual_information(px, triple.y2),
    }
