"""Small-blocklength codebooks for the BSSC + BSC(p) channel and their
bit-flip symmetrization.

A base codebook maps message pairs (m0, m1) to length-n binary strings and
carries decoding maps for Y1, Y2 (to (m0, m1)) and Y3 (to m0). The
symmetrized codebook doubles it: (m0, m1, 0) keeps the codeword and
(m0, m1, 1) gets its bitwise flip. Its decoders combine a base decision
on y with the opposite receiver's base decision on flip(y); when both fire
on different messages the output is a tie and each is chosen with
probability 1/2.

Everything is computed by exhaustive enumeration of the 2^n outputs.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dmc import (
    aux_from_joint,
    bsc,
    bssc_y1,
    bssc_y2,
    conditional_mutual_information,
    mutual_information_aux,
)
from .entropy_core import entropy
from .exceptions import BlocklengthTooLargeError, CodebookError, DimensionMismatchError
from .logging import codebook_logger as logger
from .models import Receiver, Verdict

MAX_N_ERROR = 10
MAX_N_AUX = 8
RELABEL_TOL = 1e-12

Message = tuple[int, ...]


def flip(x: str) -> str:
    """Bitwise complement of a binary string."""
    if any(c not in "01" for c in x):
        raise CodebookError(f"not a binary string: {x!r}")
    return x.translate(str.maketrans("01", "10"))


@lru_cache(maxsize=16)
def _all_outputs(n: int) -> np.ndarray:
    """Bits of every length-n string, row k = binary expansion of k (MSB first)."""
    k = np.arange(2 ** n)
    shifts = np.arange(n - 1, -1, -1)
    bits = (k[:, None] >> shifts[None, :]) & 1
    bits.setflags(write=False)
    return bits


def _to_bits(word: str, n: int) -> list[int]:
    if len(word) != n or any(c not in "01" for c in word):
        raise CodebookError(f"codeword {word!r} is not a binary string of length {n}")
    return [int(c) for c in word]


def likelihoods(x_bits: np.ndarray, y_bits: np.ndarray, w: np.ndarray) -> np.ndarray:
    """P(y | x) for a memoryless channel w, shape (len(x_bits), len(y_bits))."""
    out = np.ones((x_bits.shape[0], y_bits.shape[0]))
    for j in range(x_bits.shape[1]):
        out *= w[x_bits[:, j][:, None], y_bits[:, j][None, :]]
    return out


def receiver_channel(receiver: Receiver, p: float) -> np.ndarray:
    if receiver is Receiver.Y1:
        return bssc_y1().matrix
    if receiver is Receiver.Y2:
        return bssc_y2().matrix
    return bsc(p).matrix


class Codebook:
    """Base codebook with decoding maps.

    Args:
        n: Blocklength
        codewords: {message tuple: binary string}; message[0] is m0
        decoders: Optional {"y1": {y: message}, "y2": {y: message}, "y3": {y: m0}};
            receivers without a map use maximum-likelihood decoding
            (ties to the lowest message index)

    Raises:
        CodebookError: On malformed codewords or decoding maps.
    """

    def __init__(self, n: int, codewords: dict[Message, str], decoders: dict | None = None):
        if n < 1:
            raise CodebookError(f"blocklength must be >= 1, got {n}")
        if not codewords:
            raise CodebookError("codebook has no codewords")
        self.n = n
        self.messages: list[Message] = sorted(codewords)
        self.codewords = {m: codewords[m] for m in self.messages}
        self.codeword_bits = np.array(
            [_to_bits(codewords[m], n) for m in self.messages], dtype=np.intp
        )
        self.m0_values = sorted({m[0] for m in self.messages})
        self.m0_labels = np.array([self.m0_values.index(m[0]) for m in self.messages])
        self._index = {m: i for i, m in enumerate(self.messages)}
        self._decoders = self._parse_decoders(decoders or {})

    def __len__(self) -> int:
        return len(self.messages)

    @property
    def m0_count(self) -> int:
        return len(self.m0_values)

    def _parse_decoders(self, decoders: dict) -> dict[Receiver, np.ndarray]:
        parsed = {}
        for key, receiver in (("y1", Receiver.Y1), ("y2", Receiver.Y2), ("y3", Receiver.Y3)):
            if key not in decoders:
                continue
            table = np.full(2 ** self.n, -1, dtype=np.intp)
            for y, target in decoders[key].items():
                _to_bits(y, self.n)
                y_index = int(y, 2)
                if receiver is Receiver.Y3:
                    if target not in self.m0_values:
                        raise CodebookError(f"{key} decoder maps {y} to unknown m0 {target!r}")
                    table[y_index] = self.m0_values.index(target)
                else:
                    target = tuple(target)
                    if target not in self._index:
                        raise CodebookError(f"{key} decoder maps {y} to unknown message {target!r}")
                    table[y_index] = self._index[target]
            parsed[receiver] = table
        return parsed

    def labels(self, receiver: Receiver) -> np.ndarray:
        """What each message must be decoded to at this receiver."""
        if receiver is Receiver.Y3:
            return self.m0_labels
        return np.arange(len(self.messages))

    def _ml_decisions(self, receiver: Receiver, p: float) -> np.ndarray:
        lik = likelihoods(self.codeword_bits, _all_outputs(self.n), receiver_channel(receiver, p))
        if receiver is Receiver.Y3:
            per_m0 = np.zeros((self.m0_count, lik.shape[1]))
            np.add.at(per_m0, self.m0_labels, lik)
            lik = per_m0
        best = np.argmax(lik, axis=0)
        return np.where(lik.max(axis=0) > 0, best, -1)

    def decisions(self, receiver: Receiver, p: float) -> tuple[np.ndarray, np.ndarray]:
        """(first, second) candidate decision per output; -1 means none.

        A base codebook has a single candidate, so second is all -1.
        """
        receiver = Receiver(receiver)
        first = self._decoders.get(receiver)
        if first is None:
            first = self._ml_decisions(receiver, p)
        return first, np.full_like(first, -1)

    @classmethod
    def from_dict(cls, data: dict) -> "Codebook":
        """Build from {"n": n, "codewords": {"m0,m1": bits}, "decoders": {...}}.

        Decoder targets are "m0,m1" strings for y1/y2 and m0 integers (or
        strings) for y3.
        """
        try:
            n = int(data["n"])
            codewords = {_parse_message(k): v for k, v in data["codewords"].items()}
            decoders = {}
            for key, table in (data.get("decoders") or {}).items():
                if key == "y3":
                    decoders[key] = {y: int(m0) for y, m0 in table.items()}
                else:
                    decoders[key] = {y: _parse_message(m) for y, m in table.items()}
        except (KeyError, TypeError, ValueError) as e:
            raise CodebookError(f"malformed codebook document: {e}") from e
        return cls(n, codewords, decoders)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "codewords": {",".join(map(str, m)): w for m, w in self.codewords.items()},
        }


def _parse_message(key) -> Message:
    if isinstance(key, (list, tuple)):
        return tuple(int(k) for k in key)
    return tuple(int(k) for k in str(key).split(","))


class SymmetricCodebook(Codebook):
    """Flip-closed doubling of a base codebook, messages (m0, m1, b)."""

    def __init__(self, base: Codebook):
        doubled = {}
        for m, word in base.codewords.items():
            doubled[(*m, 0)] = word
            doubled[(*m, 1)] = flip(word)
        super().__init__(base.n, doubled)
        self.base = base

    def decisions(self, receiver: Receiver, p: float) -> tuple[np.ndarray, np.ndarray]:
        receiver = Receiver(receiver)
        mirror = np.arange(2 ** self.n)[::-1]
        if receiver is Receiver.Y3:
            own = self.base.decisions(Receiver.Y3, p)[0]
            return own, own[mirror]
        other = Receiver.Y2 if receiver is Receiver.Y1 else Receiver.Y1
        own = self.base.decisions(receiver, p)[0]
        swapped = self.base.decisions(other, p)[0][mirror]
        # base message i with bit b sits at doubled index 2i + b
        return np.where(own >= 0, 2 * own, -1), np.where(swapped >= 0, 2 * swapped + 1, -1)

    def tie_outputs(self, receiver: Receiver, p: float) -> np.ndarray:
        """Boolean mask of outputs falling in two decoding sets with different messages."""
        first, second = self.decisions(receiver, p)
        return (first >= 0) & (second >= 0) & (first != second)


def symmetrize_codebook(base: Codebook) -> SymmetricCodebook:
    """Doubled codebook of size |M0| x 2|M1|, closed under flip."""
    return SymmetricCodebook(base)


def random_codebook(n: int, m0_count: int, m1_count: int, seed: int = 0) -> Codebook:
    """Uniformly random codewords with maximum-likelihood decoders."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(m0_count * m1_count, n))
    codewords = {}
    for k, row in enumerate(bits):
        codewords[(k // m1_count, k % m1_count)] = "".join(map(str, row))
    return Codebook(n, codewords)


def check_invariants(cb: SymmetricCodebook) -> Verdict:
    """Flip closure, message count and role-swapped decoding of a doubled codebook."""
    problems = []
    for m, word in cb.base.codewords.items():
        if cb.codewords.get((*m, 0)) != word or cb.codewords.get((*m, 1)) != flip(word):
            problems.append(f"flip closure broken at {m}")
    if len(cb) != 2 * len(cb.base):
        problems.append(f"size {len(cb)} != 2 x {len(cb.base)}")
    mirror = np.arange(2 ** cb.n)[::-1]
    for receiver, other in ((Receiver.Y1, Receiver.Y2), (Receiver.Y2, Receiver.Y1)):
        # p does not enter the BSSC decoders
        _, second = cb.decisions(receiver, 0.0)
        expected = cb.base.decisions(other, 0.0)[0][mirror]
        if not np.array_equal(second >= 0, expected >= 0):
            problems.append(f"{receiver.name} flipped decoding sets do not match")
    return Verdict("codebook_invariants", not problems, 0.0 if not problems else -1.0,
                   grid=cb.n, details={"problems": problems})


# ============ Exact error analysis ============

def _check_n(n: int, limit: int) -> None:
    if n > limit:
        raise BlocklengthTooLargeError(n, limit)


def _credit(first: np.ndarray, second: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Probability of a correct decision, shape (messages, outputs)."""
    f = first[None, :]
    s = second[None, :]
    lab = labels[:, None]
    tie = (f >= 0) & (s >= 0) & (f != s)
    single = np.where(f >= 0, f, s)
    return np.where(tie, 0.5 * ((f == lab).astype(float) + (s == lab)), (single == lab) & (single >= 0))


def exact_error(cb: Codebook, p: float, receiver: Receiver | int) -> float:
    """Average error probability at one receiver (uniform messages, ties half-credited).

    Raises:
        BlocklengthTooLargeError: If n > 10.
    """
    _check_n(cb.n, MAX_N_ERROR)
    receiver = Receiver(receiver)
    lik = likelihoods(cb.codeword_bits, _all_outputs(cb.n), receiver_channel(receiver, p))
    first, second = cb.decisions(receiver, p)
    correct = np.sum(lik * _credit(first, second, cb.labels(receiver)), axis=1)
    return float(max(1.0 - correct.mean(), 0.0))


def tie_probability(cb: SymmetricCodebook, p: float, receiver: Receiver | int) -> float:
    """Probability that the output lands in the tie set (uniform messages)."""
    _check_n(cb.n, MAX_N_ERROR)
    receiver = Receiver(receiver)
    lik = likelihoods(cb.codeword_bits, _all_outputs(cb.n), receiver_channel(receiver, p))
    return float(lik[:, cb.tie_outputs(receiver, p)].sum(axis=1).mean())


@dataclass
class EntropySplit:
    """H(M0,M1|Y1^n) against 1 + H(M0,M1|Y1^n, b) for a doubled codebook."""
    given_output: float
    given_output_and_bit: float

    @property
    def bound(self) -> float:
        return 1.0 + self.given_output_and_bit

    @property
    def holds(self) -> bool:
        return self.given_output <= self.bound + 1e-12


def conditional_entropy_split(cb: SymmetricCodebook, p: float = 0.0) -> EntropySplit:
    """Exact entropies at receiver Y1 under uniform (m0, m1, b)."""
    _check_n(cb.n, MAX_N_ERROR)
    lik = likelihoods(cb.codeword_bits, _all_outputs(cb.n), receiver_channel(Receiver.Y1, p))
    joint = lik / len(cb)  # rows 2i + b
    per_bit = joint.reshape(len(cb.base), 2, -1)
    h_m_y = entropy(per_bit.sum(axis=1).ravel()) - entropy(joint.sum(axis=0))
    h_m_yb = entropy(joint.ravel()) - entropy(per_bit.sum(axis=0).ravel())
    return EntropySplit(float(h_m_y), float(h_m_yb))


# ============ Auxiliary identifications ============

def aux_distribution(cb: Codebook, i: int, p: float, branch: int) -> np.ndarray:
    """Joint law of (M0, Y3 before position i, Y_branch after position i, X_i).

    Positions are 1-based. Shape (M0, 2^(i-1), 2^(n-i), 2).

    Raises:
        BlocklengthTooLargeError: If n > 8.
    """
    _check_n(cb.n, MAX_N_AUX)
    n = cb.n
    if not 1 <= i <= n:
        raise DimensionMismatchError(f"1..{n}", i, "position")
    if branch not in (1, 2):
        raise DimensionMismatchError("1 or 2", branch, "branch")
    bits = cb.codeword_bits
    prefix = likelihoods(bits[:, : i - 1], _all_outputs(i - 1), receiver_channel(Receiver.Y3, p))
    suffix_channel = receiver_channel(Receiver(branch), p)
    suffix = likelihoods(bits[:, i:], _all_outputs(n - i), suffix_channel)
    per_codeword = np.einsum("cp,cs->cps", prefix, suffix) / len(cb)
    joint = np.zeros((cb.m0_count, prefix.shape[1], suffix.shape[1], 2))
    np.add.at(joint, (cb.m0_labels, slice(None), slice(None), bits[:, i - 1]), per_codeword)
    return joint


def relabel(d: np.ndarray) -> np.ndarray:
    """Apply flip to the prefix, suffix and X coordinates of a joint table."""
    return d[:, ::-1, ::-1, ::-1]


def check_relabel_equivalence(d1: np.ndarray, d2: np.ndarray, tol: float = RELABEL_TOL) -> Verdict:
    """relabel(d1) == d2 within tol.

    Raises:
        DimensionMismatchError: If the shapes differ.
    """
    if d1.shape != d2.shape:
        raise DimensionMismatchError(d1.shape, d2.shape)
    err = float(np.max(np.abs(relabel(d1) - d2)))
    return Verdict("relabel", err <= tol, tol - err, details={"max_abs_error": err})


def _aux_of(joint: np.ndarray):
    return aux_from_joint(joint.reshape(-1, 2))


def branch_informations(cb: Codebook, i: int, p: float) -> dict[str, float]:
    """Single-letter informations of U1 (Y1 suffix) and U2 (Y2 suffix) at position i.

    Keys: u1_y3, u2_y3, x_y1_u1, x_y2_u1, x_y1_u2, x_y2_u2.
    """
    w1, w2, w3 = bssc_y1(), bssc_y2(), bsc(p)
    aux1 = _aux_of(aux_distribution(cb, i, p, 1))
    aux2 = _aux_of(aux_distribution(cb, i, p, 2))
    return {
        "u1_y3": mutual_information_aux(aux1, w3),
        "u2_y3": mutual_information_aux(aux2, w3),
        "x_y1_u1": conditional_mutual_information(aux1, w1),
        "x_y2_u1": conditional_mutual_information(aux1, w2),
        "x_y1_u2": conditional_mutual_information(aux2, w1),
        "x_y2_u2": conditional_mutual_information(aux2, w2),
    }


def symmetry_verdict(cb: Codebook, p: float, tol: float = RELABEL_TOL) -> Verdict:
    """Relabel equivalence and the implied information equalities at every position.

    Asserted: I(U1;Y3) = I(U2;Y3), I(X;Y2|U2) = I(X;Y1|U1) and
    I(X;Y1|U2) = I(X;Y2|U1). The same-receiver difference
    I(X;Y2|U1) - I(X;Y2|U2) is reported only.
    """
    worst_relabel = 0.0
    worst_info = 0.0
    same_receiver = 0.0
    for i in range(1, cb.n + 1):
        d1 = aux_distribution(cb, i, p, 1)
        d2 = aux_distribution(cb, i, p, 2)
        worst_relabel = max(worst_relabel, check_relabel_equivalence(d1, d2, tol).details["max_abs_error"])
        info = branch_informations(cb, i, p)
        worst_info = max(
            worst_info,
            abs(info["u1_y3"] - info["u2_y3"]),
            abs(info["x_y2_u2"] - info["x_y1_u1"]),
            abs(info["x_y1_u2"] - info["x_y2_u1"]),
        )
        same_receiver = max(same_receiver, abs(info["x_y2_u1"] - info["x_y2_u2"]))
    passed = worst_relabel <= tol and worst_info <= tol
    logger.info(
        f"symmetry n={cb.n}: relabel error {worst_relabel:.3e}, "
        f"info error {worst_info:.3e}, same-receiver gap {same_receiver:.3e}"
    )
    return Verdict(
        "symmetry",
        passed,
        tol - max(worst_relabel, worst_info),
        p=p,
        grid=cb.n,
        details={
            "relabel_error": worst_relabel,
            "info_error": worst_info,
            "same_receiver_gap": same_receiver,
        },
    )
