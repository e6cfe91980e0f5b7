"""Tests for flip-symmetrized codebooks, their exact error analysis and the
auxiliary relabeling identities.

Run with: uv run pytest src/tests/test_codebook_symmetry.py -v
"""

import numpy as np
import pytest

from src.codebook_symmetry import (
    Codebook,
    aux_distribution,
    branch_informations,
    check_invariants,
    check_relabel_equivalence,
    conditional_entropy_split,
    exact_error,
    flip,
    random_codebook,
    relabel,
    symmetrize_codebook,
    symmetry_verdict,
    tie_probability,
)
from src.exceptions import BlocklengthTooLargeError, CodebookError, DimensionMismatchError
from src.models import Receiver


class TestCodebook:
    """Construction and decoding of base codebooks."""

    def test_flip(self):
        assert flip("0110") == "1001"
        assert flip("") == ""
        with pytest.raises(CodebookError):
            flip("012")

    @pytest.mark.parametrize(
        "n, codewords",
        [
            (3, {(0, 0): "01"}),
            (3, {(0, 0): "0a1"}),
            (3, {}),
            (0, {(0, 0): ""}),
        ],
    )
    def test_bad_codewords(self, n, codewords):
        with pytest.raises(CodebookError):
            Codebook(n, codewords)

    @pytest.mark.parametrize("receiver", list(Receiver))
    def test_single_message_never_errs(self, receiver):
        cb = Codebook(2, {(0, 0): "01"})
        assert exact_error(cb, 0.3, receiver) == pytest.approx(0.0, abs=1e-15)

    def test_one_bit_code_ml(self):
        cb = Codebook.from_dict({"n": 1, "codewords": {"0,0": "0", "0,1": "1"}})
        assert exact_error(cb, 0.25, Receiver.Y1) == pytest.approx(0.25)
        assert exact_error(cb, 0.25, Receiver.Y2) == pytest.approx(0.25)
        # one m0 value
        assert exact_error(cb, 0.25, Receiver.Y3) == pytest.approx(0.0)

    def test_one_bit_code_explicit_decoders(self):
        cb = Codebook.from_dict({
            "n": 1,
            "codewords": {"0,0": "0", "0,1": "1"},
            "decoders": {"y1": {"0": "0,0", "1": "0,1"}, "y3": {"0": 0, "1": 0}},
        })
        assert exact_error(cb, 0.25, Receiver.Y1) == pytest.approx(0.25)
        assert exact_error(cb, 0.25, Receiver.Y3) == pytest.approx(0.0)

    def test_unmapped_output_counts_as_error(self):
        cb = Codebook(1, {(0, 0): "0", (0, 1): "1"}, {"y1": {"1": (0, 1)}})
        assert exact_error(cb, 0.25, Receiver.Y1) == pytest.approx(0.5)
        cb = Codebook(1, {(0, 0): "0", (0, 1): "1"}, {"y1": {}})
        assert exact_error(cb, 0.25, Receiver.Y1) == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "decoders",
        [
            {"y1": {"0": "5,5"}},
            {"y3": {"0": 7}},
            {"y2": {"00": "0,0"}},
        ],
    )
    def test_bad_decoder(self, decoders):
        with pytest.raises(CodebookError):
            Codebook.from_dict({"n": 1, "codewords": {"0,0": "0", "0,1": "1"}, "decoders": decoders})

    def test_malformed_document(self):
        with pytest.raises(CodebookError):
            Codebook.from_dict({"codewords": {"0,0": "0"}})

    def test_document_keys(self, small_codebook):
        again = Codebook.from_dict(small_codebook.to_dict())
        assert again.codewords == small_codebook.codewords
        assert again.m0_count == 2

    def test_random_codebook(self):
        cb = random_codebook(4, 2, 3, seed=1)
        assert len(cb) == 6
        assert cb.m0_count == 2
        assert random_codebook(4, 2, 3, seed=1).codewords == cb.codewords


class TestSymmetrization:
    def test_invariants(self, small_codebook):
        sym = symmetrize_codebook(small_codebook)
        assert len(sym) == 8
        assert sym.codewords[(0, 1, 1)] == "100"
        assert sym.codewords[(0, 1, 0)] == "011"
        verdict = check_invariants(sym)
        assert verdict.passed
        assert verdict.details["problems"] == []

    def test_one_codeword_ties(self):
        sym = symmetrize_codebook(Codebook(1, {(0, 0): "0"}))
        assert sym.tie_outputs(Receiver.Y1, 0.25).tolist() == [False, True]
        assert tie_probability(sym, 0.25, Receiver.Y1) == pytest.approx(0.75)
        assert exact_error(sym, 0.25, Receiver.Y1) == pytest.approx(0.375)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_error_bound(self, small_codebook, seed):
        for base in (small_codebook, random_codebook(4, 2, 2, seed=seed)):
            sym = symmetrize_codebook(base)
            for p in (0.1, 0.25):
                worst = max(exact_error(base, p, r) for r in Receiver)
                for r in Receiver:
                    assert exact_error(sym, p, r) <= 0.5 + worst + 1e-12

    def test_entropy_split(self, small_codebook):
        split = conditional_entropy_split(symmetrize_codebook(small_codebook))
        assert split.holds
        assert split.given_output <= split.bound + 1e-12
        assert split.given_output_and_bit >= -1e-12

    def test_blocklength_limits(self):
        big = Codebook(11, {(0, 0): "0" * 11})
        with pytest.raises(BlocklengthTooLargeError):
            exact_error(big, 0.25, Receiver.Y1)
        with pytest.raises(BlocklengthTooLargeError):
            aux_distribution(Codebook(9, {(0, 0): "0" * 9}), 1, 0.25, 1)


class TestAuxiliaries:
    """Joint laws of the two auxiliary identifications."""

    def test_distribution_shape(self, small_codebook):
        d = aux_distribution(small_codebook, 2, 0.25, 1)
        assert d.shape == (2, 2, 2, 2)
        assert d.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(d >= 0)

    @pytest.mark.parametrize("i, branch", [(0, 1), (4, 1), (1, 3)])
    def test_bad_arguments(self, small_codebook, i, branch):
        with pytest.raises(DimensionMismatchError):
            aux_distribution(small_codebook, i, 0.25, branch)

    def test_relabel_is_involution(self, rng):
        d = rng.uniform(size=(2, 4, 2, 2))
        assert np.array_equal(relabel(relabel(d)), d)

    def test_relabel_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            check_relabel_equivalence(np.zeros((1, 2, 2, 2)), np.zeros((1, 1, 2, 2)))

    @pytest.mark.parametrize("seed", range(20))
    def test_random_code_identities(self, seed):
        sym = symmetrize_codebook(random_codebook(5, 2, 2, seed=seed))
        for i in range(1, 6):
            verdict = check_relabel_equivalence(
                aux_distribution(sym, i, 0.25, 1), aux_distribution(sym, i, 0.25, 2)
            )
            assert verdict.details["max_abs_error"] <= 1e-12
            info = branch_informations(sym, i, 0.25)
            assert info["u1_y3"] == pytest.approx(info["u2_y3"], abs=1e-12)
            assert info["x_y2_u2"] == pytest.approx(info["x_y1_u1"], abs=1e-12)
            assert info["x_y1_u2"] == pytest.approx(info["x_y2_u1"], abs=1e-12)

    def test_same_receiver_informations_differ(self):
        sym = symmetrize_codebook(Codebook(2, {(0, 0): "00"}))
        info = branch_informations(sym, 1, 0.25)
        assert info["x_y2_u1"] == pytest.approx(0.1887219, abs=1e-6)
        assert info["x_y2_u2"] == pytest.approx(0.2375168, abs=1e-6)
        assert info["x_y1_u2"] == pytest.approx(info["x_y2_u1"], abs=1e-12)

    def test_symmetry_verdict(self):
        verdict = symmetry_verdict(symmetrize_codebook(Codebook(2, {(0, 0): "00"})), 0.25)
        assert verdict.passed
        assert verdict.details["same_receiver_gap"] == pytest.approx(0.2375168 - 0.1887219, abs=1e-6)

    def test_unsymmetrized_code_fails(self):
        verdict = symmetry_verdict(Codebook(2, {(0, 0): "00"}), 0.25)
        assert not verdict.passed
        assert verdict.details["relabel_error"] == pytest.approx(1.0)
