"""Discrete memoryless channel algebra.

Channels are row-stochastic matrices (rows = input letters). The three
concrete channels are the two halves of the binary skew-symmetric broadcast
channel (Y1, Y2) and a BSC(p) for Y3.
"""

from dataclasses import dataclass

import numpy as np

from .entropy_core import entropy
from .exceptions import (
    DimensionMismatchError,
    DomainError,
    InvalidDistributionError,
)
from .logging import core_logger as logger

STOCHASTIC_TOL = 1e-12


def _check_stochastic(name: str, arr: np.ndarray) -> None:
    if np.any(arr < -STOCHASTIC_TOL):
        raise InvalidDistributionError(name, "negative entry")
    sums = arr.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > STOCHASTIC_TOL):
        raise InvalidDistributionError(name, f"row sums {np.atleast_1d(sums).tolist()} != 1")


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Channel transition matrix P(Y|X).

    Attributes:
        matrix: 2-D array, one row per input letter
    """
    matrix: np.ndarray

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise DimensionMismatchError("2-D nonempty matrix", arr.shape)
        _check_stochastic("channel", arr)
        arr = np.clip(arr, 0.0, None)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[1]

    def to_list(self) -> list[list[float]]:
        return self.matrix.tolist()


@dataclass(frozen=True, eq=False)
class InputDistribution:
    """Distribution P(X) over the input alphabet."""
    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DimensionMismatchError("1-D nonempty vector", arr.shape)
        _check_stochastic("input distribution", arr)
        arr = np.clip(arr, 0.0, None)
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def binary(cls, s: float) -> "InputDistribution":
        """Binary input with P(X=0) = s."""
        if not 0.0 <= s <= 1.0:
            raise DomainError("s", s, "[0, 1]")
        return cls(np.array([s, 1.0 - s]))


@dataclass(frozen=True, eq=False)
class AuxDecomposition:
    """Auxiliary U for a binary input: P(U=i) = u_i, P(X=0|U=i) = s_i.

    Attributes:
        weights: u_1..u_m, summing to 1
        conditionals: s_1..s_m in [0, 1]
    """
    weights: np.ndarray
    conditionals: np.ndarray

    def __post_init__(self):
        u = np.array(self.weights, dtype=float).ravel()
        s = np.array(self.conditionals, dtype=float).ravel()
        if u.shape != s.shape or u.size == 0:
            raise DimensionMismatchError(u.shape, s.shape, "weights/conditionals")
        _check_stochastic("aux weights", u)
        if np.any(s < -STOCHASTIC_TOL) or np.any(s > 1.0 + STOCHASTIC_TOL):
            raise DomainError("conditionals", s.tolist(), "[0, 1]")
        u = np.clip(u, 0.0, None)
        s = np.clip(s, 0.0, 1.0)
        u.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "weights", u)
        object.__setattr__(self, "conditionals", s)

    @property
    def m(self) -> int:
        return self.weights.size

    def input_rows(self) -> np.ndarray:
        """P(X|U=i) as an (m, 2) array."""
        return np.column_stack([self.conditionals, 1.0 - self.conditionals])

    def joint(self) -> np.ndarray:
        """P(U=i, X=x) as an (m, 2) array."""
        return self.weights[:, None] * self.input_rows()


@dataclass(frozen=True)
class ChannelTriple:
    """Three channels sharing one input alphabet, for receivers Y1, Y2, Y3."""
    y1: StochasticMatrix
    y2: StochasticMatrix
    y3: StochasticMatrix

    def __post_init__(self):
        rows = {self.y1.n_inputs, self.y2.n_inputs, self.y3.n_inputs}
        if len(rows) != 1:
            raise DimensionMismatchError(
                "equal input alphabets",
                (self.y1.n_inputs, self.y2.n_inputs, self.y3.n_inputs),
            )

    @classmethod
    def from_matrices(cls, y1, y2, y3) -> "ChannelTriple":
        """Build from raw nested lists or arrays."""
        return cls(_as_channel(y1), _as_channel(y2), _as_channel(y3))

    @classmethod
    def from_dict(cls, data: dict) -> "ChannelTriple":
        """Build from {"y1": [[...]], "y2": [[...]], "y3": [[...]]}."""
        missing = [k for k in ("y1", "y2", "y3") if k not in data]
        if missing:
            raise DimensionMismatchError("keys y1, y2, y3", sorted(data), "channel document")
        return cls.from_matrices(data["y1"], data["y2"], data["y3"])

    @property
    def n_inputs(self) -> int:
        return self.y1.n_inputs

    def channels(self) -> tuple[StochasticMatrix, StochasticMatrix, StochasticMatrix]:
        return (self.y1, self.y2, self.y3)

    def to_dict(self) -> dict:
        return {"y1": self.y1.to_list(), "y2": self.y2.to_list(), "y3": self.y3.to_list()}


def _as_channel(ch) -> StochasticMatrix:
    return ch if isinstance(ch, StochasticMatrix) else StochasticMatrix(np.asarray(ch, dtype=float))


def _as_probs(px) -> np.ndarray:
    if isinstance(px, InputDistribution):
        return px.probs
    return InputDistribution(np.asarray(px, dtype=float)).probs


# ============ Concrete channels ============

def bssc_y1() -> StochasticMatrix:
    """Y1 half of the BSSC: input 0 is erased to a fair coin, input 1 is clean."""
    return StochasticMatrix(np.array([[0.5, 0.5], [0.0, 1.0]]))


def bssc_y2() -> StochasticMatrix:
    """Y2 half of the BSSC: the bit-flip mirror of Y1."""
    return StochasticMatrix(np.array([[1.0, 0.0], [0.5, 0.5]]))


def bsc(p: float) -> StochasticMatrix:
    """Binary symmetric channel with crossover p in [0, 1/2]."""
    if not 0.0 <= p <= 0.5:
        raise DomainError("p", p, "[0, 1/2]")
    return StochasticMatrix(np.array([[1.0 - p, p], [p, 1.0 - p]]))


def bssc_triple(p: float) -> ChannelTriple:
    """BSSC halves for Y1, Y2 and BSC(p) for Y3."""
    return ChannelTriple(bssc_y1(), bssc_y2(), bsc(p))


# ============ Information measures ============

def mutual_information(px, ch) -> float:
    """I(X;Y) = H(Y) - H(Y|X) in bits.

    Raises:
        DimensionMismatchError: If len(px) != rows of ch.
    """
    probs = _as_probs(px)
    w = _as_channel(ch).matrix
    if probs.size != w.shape[0]:
        raise DimensionMismatchError(w.shape[0], probs.size, "input alphabet")
    return float(entropy(probs @ w) - probs @ entropy(w, axis=1))


def conditional_mutual_information(aux: AuxDecomposition, ch) -> float:
    """I(X;Y|U) = sum_i u_i I(X;Y|U=i) for a binary input."""
    w = _as_channel(ch).matrix
    if w.shape[0] != 2:
        raise DimensionMismatchError(2, w.shape[0], "input alphabet")
    rows = aux.input_rows()
    outputs = rows @ w
    per_state = entropy(outputs, axis=1) - rows @ entropy(w, axis=1)
    return float(aux.weights @ per_state)


def mutual_information_aux(aux: AuxDecomposition, ch) -> float:
    """I(U;Y) = H(Y) - H(Y|U) along U -> X -> Y."""
    w = _as_channel(ch).matrix
    if w.shape[0] != 2:
        raise DimensionMismatchError(2, w.shape[0], "input alphabet")
    outputs = aux.input_rows() @ w
    return float(entropy(aux.weights @ outputs) - aux.weights @ entropy(outputs, axis=1))


def marginal_input(aux: AuxDecomposition) -> InputDistribution:
    """Induced P(X): P(X=0) = sum_i u_i s_i."""
    x0 = float(np.clip(aux.weights @ aux.conditionals, 0.0, 1.0))
    return InputDistribution(np.array([x0, 1.0 - x0]))


def aux_from_joint(joint) -> AuxDecomposition:
    """AuxDecomposition from a P(U, X) table of shape (m, 2); empty states dropped."""
    table = np.asarray(joint, dtype=float)
    if table.ndim != 2 or table.shape[1] != 2:
        raise DimensionMismatchError("(m, 2)", table.shape, "joint table")
    weights = table.sum(axis=1)
    keep = weights > 0
    if not np.any(keep):
        raise InvalidDistributionError("joint", "all-zero table")
    if not np.all(keep):
        logger.debug(f"aux_from_joint: dropped {int(np.count_nonzero(~keep))} empty auxiliary states")
    weights = weights[keep]
    total = weights.sum()
    return AuxDecomposition(weights / total, table[keep, 0] / weights)


def is_deterministic(ch, tol: float = STOCHASTIC_TOL) -> bool:
    """True if every row is a unit vector (output a function of input)."""
    w = _as_channel(ch).matrix
    return bool(np.all(np.abs(w.max(axis=1) - 1.0) <= tol))


def is_skew_symmetric(y1, y2, tol: float = STOCHASTIC_TOL) -> bool:
    """P(Y2 = pi(y) | X = pi(x)) == P(Y1 = y | X = x) for binary alphabets."""
    a = _as_channel(y1).matrix
    b = _as_channel(y2).matrix
    if a.shape != (2, 2) or b.shape != (2, 2):
        return False
    return bool(np.allclose(b[::-1, ::-1], a, atol=tol, rtol=0.0))
