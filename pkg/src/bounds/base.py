"""Base evaluator for rate-region bounds over auxiliary decompositions."""

from __future__ import annotations

from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator

import numpy as np

from ..dmc import ChannelTriple
from ..entropy_core import entropy
from ..exceptions import DimensionMismatchError, GridParameterError
from ..logging import bounds_logger as logger
from ..region import RateRegion, from_point_cloud, pareto_frontier
from ..utils.numerics import nondecreasing_tuples, positive_compositions, uniform_grid

# rows per batch handed to a worker
BATCH_ROWS = 200_000

# weight-simplex resolution, matches grids.weight_grid in config.yaml
DEFAULT_WEIGHT_GRID = 21


class AuxBatch:
    """A block of auxiliaries with weights (B, k).

    Atoms are given either as indices into the evaluator's s-grid
    (`s_index`, uses the precomputed tables) or as free values (`s`).
    """

    __slots__ = ("weights", "s_index", "s")

    def __init__(
        self,
        weights: np.ndarray,
        s_index: np.ndarray | None = None,
        s: np.ndarray | None = None,
    ):
        if (s_index is None) == (s is None):
            got = "both" if s is not None else "neither"
            raise DimensionMismatchError("one of s_index and s", got, "atom source")
        self.weights = weights
        self.s_index = s_index
        self.s = s

    def __len__(self) -> int:
        return self.weights.shape[0]


class BoundEvaluator(ABC):
    """Abstract base class for bound evaluators on a binary-input ChannelTriple.

    Each evaluator is bound to one channel triple and one grid. Subclasses
    turn per-auxiliary information functionals into corner points; the base
    class owns auxiliary enumeration, the functional lookup tables and the
    worker pool.

    Usage:
        with InnerBoundEvaluator(triple, aux_card=2, grid_n=101) as ev:
            region = ev.evaluate()
    """

    name = "bound"

    def __init__(
        self,
        triple: ChannelTriple,
        aux_card: int = 3,
        grid_n: int = 101,
        weight_grid: int = DEFAULT_WEIGHT_GRID,
        max_workers: int = 1,
    ):
        if aux_card < 1:
            raise GridParameterError("aux_card", aux_card, ">= 1")
        if grid_n < 2:
            raise GridParameterError("grid_n", grid_n, ">= 2")
        if weight_grid < 2:
            raise GridParameterError("weight_grid", weight_grid, ">= 2")
        if max_workers < 1:
            raise GridParameterError("max_workers", max_workers, ">= 1")
        if triple.n_inputs != 2:
            raise DimensionMismatchError(2, triple.n_inputs, "input alphabet")

        self.triple = triple
        self.aux_card = aux_card
        self.grid_n = grid_n
        self.weight_grid = weight_grid
        self.max_workers = max_workers
        self.s_values = uniform_grid(0.0, 1.0, grid_n)
        self._executor: ThreadPoolExecutor | None = None

        # H(Y_k | U=i) and H(Y_k | X, U=i) as functions of s_i, per receiver
        self._w = [ch.matrix for ch in triple.channels()]
        self._hy = []
        self._hyx = []
        for w in self._w:
            rows = np.outer(self.s_values, w[0]) + np.outer(1.0 - self.s_values, w[1])
            row_h = entropy(w, axis=1)
            self._hy.append(entropy(rows, axis=1))
            self._hyx.append(self.s_values * row_h[0] + (1.0 - self.s_values) * row_h[1])

    @abstractmethod
    def corner_points(self, batch: AuxBatch) -> np.ndarray:
        """Candidate boundary points contributed by one batch of auxiliaries.

        Args:
            batch: Auxiliaries to evaluate.

        Returns:
            (n, 2) array of (R0, R1) points.
        """
        pass

    @abstractmethod
    def batches(self) -> Iterator[AuxBatch]:
        """Deterministic, lexicographic stream of auxiliary batches."""
        pass

    # Optional hooks with default implementations

    def check_point(self, batch: AuxBatch) -> np.ndarray:
        """Per-auxiliary membership check of emitted corners in another bound.

        Raises:
            NotImplementedError: If the evaluator has no companion bound.
        """
        raise NotImplementedError(f"{self.name} has no companion-bound check")

    # ============ Functionals ============

    def output_entropy(self, x: np.ndarray, receiver: int) -> np.ndarray:
        """H(Y_k) for P(X=0) = x (vectorized); receiver is 0, 1 or 2."""
        w = self._w[receiver]
        rows = np.outer(x, w[0]) + np.outer(1.0 - x, w[1])
        return entropy(rows, axis=1)

    def _atom_terms(self, batch: AuxBatch, receiver: int) -> tuple[np.ndarray, np.ndarray]:
        """H(Y_k|U=i) and H(Y_k|X,U=i) per atom, shape (B, k) each."""
        if batch.s is None:
            return self._hy[receiver][batch.s_index], self._hyx[receiver][batch.s_index]
        w = self._w[receiver]
        s = batch.s
        rows = s[..., None] * w[0] + (1.0 - s)[..., None] * w[1]
        row_h = entropy(w, axis=1)
        return entropy(rows, axis=-1), s * row_h[0] + (1.0 - s) * row_h[1]

    def functionals(self, batch: AuxBatch) -> dict[str, np.ndarray]:
        """Information functionals of every auxiliary in the batch.

        Returns:
            Dict with keys
              x   P(X=0)
              a   I(U;Y3)
              b1  I(X;Y1|U), b2 I(X;Y2|U)
              c1  I(X;Y1),   c2 I(X;Y2)
              i1  I(U;Y1),   i2 I(U;Y2)
        """
        u = batch.weights
        s = self.s_values[batch.s_index] if batch.s is None else batch.s
        x = np.clip(np.sum(u * s, axis=1), 0.0, 1.0)
        out = {"x": x}
        for k, tag in enumerate(("1", "2", "3")):
            hy_atoms, hyx_atoms = self._atom_terms(batch, k)
            hy_u = np.sum(u * hy_atoms, axis=1)
            hyx_u = np.sum(u * hyx_atoms, axis=1)
            hy = self.output_entropy(x, k)
            if tag == "3":
                out["a"] = hy - hy_u
            else:
                out[f"b{tag}"] = hy_u - hyx_u
                out[f"c{tag}"] = hy - hyx_u
                out[f"i{tag}"] = hy - hy_u
        return out

    # ============ Enumeration ============

    def compositions(self, parts: int) -> np.ndarray:
        """Weight vectors on the simplex grid with `parts` positive entries."""
        steps = self.weight_grid - 1
        return positive_compositions(steps, parts) / steps

    def canonical_batches(self) -> Iterator[AuxBatch]:
        """Auxiliaries as multisets of (weight, s) atoms, k = 1..aux_card.

        s-indices are non-decreasing within a tuple; weights run over positive
        compositions. Order: k, then s-tuple, then weight vector.
        """
        for k in range(1, self.aux_card + 1):
            weights = self.compositions(k)
            if len(weights) == 0:
                continue
            tuples = nondecreasing_tuples(self.grid_n, k)
            chunk = max(1, BATCH_ROWS // len(weights))
            for start in range(0, len(tuples), chunk):
                block = tuples[start:start + chunk]
                yield AuxBatch(
                    np.tile(weights, (len(block), 1)),
                    np.repeat(block, len(weights), axis=0),
                )

    def count_auxiliaries(self) -> int:
        total = 0
        for k in range(1, self.aux_card + 1):
            n_w = len(self.compositions(k))
            n_s = len(nondecreasing_tuples(self.grid_n, k)) if n_w else 0
            total += n_w * n_s
        return total

    # ============ Driver ============

    def _reduce(self, batch: AuxBatch) -> np.ndarray:
        points = self.corner_points(batch)
        if len(points) == 0:
            return points.reshape(0, 2)
        return pareto_frontier(points)

    def map_batches(self, func: Callable[[AuxBatch], np.ndarray]) -> list[np.ndarray]:
        """Apply func to every batch; results come back in enumeration order."""
        if self._executor is not None:
            return list(self._executor.map(func, self.batches()))
        if self.max_workers == 1:
            return [func(b) for b in self.batches()]
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(func, self.batches()))

    def evaluate(self) -> RateRegion:
        """Hull of all corner points over the auxiliary grid."""
        logger.info(
            f"{self.name}: aux_card={self.aux_card} grid_n={self.grid_n} "
            f"weight_grid={self.weight_grid} workers={self.max_workers}"
        )
        parts = [p for p in self.map_batches(self._reduce) if len(p)]
        logger.debug(f"{self.name}: {len(parts)} batches reduced")
        points = np.vstack(parts) if parts else np.zeros((1, 2))
        region = from_point_cloud(points)
        logger.info(f"{self.name}: {len(region.boundary)} boundary vertices")
        return region

    def __enter__(self) -> "BoundEvaluator":
        if self.max_workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None


def pentagon_corners(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Corners of {R0 <= a, R1 <= b, R0 + R1 <= c} per row, stacked (2n, 2)."""
    r0_top = np.minimum(a, c)
    r1_top = np.minimum(b, c)
    first = np.column_stack([r0_top, np.clip(np.minimum(b, c - r0_top), 0.0, None)])
    second = np.column_stack([np.clip(np.minimum(a, c - r1_top), 0.0, None), r1_top])
    return np.clip(np.vstack([first, second]), 0.0, None)


def sum_rate_corners(a: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Corners of {R0 <= a, R0 + R1 <= s} per row, stacked (2n, 2)."""
    s = np.clip(s, 0.0, None)
    r0 = np.clip(np.minimum(a, s), 0.0, None)
    first = np.column_stack([r0, s - r0])
    second = np.column_stack([np.zeros_like(s), s])
    return np.clip(np.vstack([first, second]), 0.0, None)
