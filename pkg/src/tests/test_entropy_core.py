"""Unit tests for the binary entropy kernels.

Run with: uv run pytest src/tests/test_entropy_core.py -v
"""

import math

import numpy as np
import pytest

from src.entropy_core import (
    binary_entropy,
    binary_entropy_inv,
    convolve,
    entropy,
    f_skew,
    f_skew_d1,
    f_skew_d2,
    f_skew_inv,
    g_bsc,
    g_bsc_d1,
    g_bsc_d2,
    log_ratio,
    quadratic_term,
)
from src.exceptions import DomainError
from src.utils.numerics import central_difference


class TestBinaryEntropy:
    """h(x) and its inverse."""

    def test_endpoints_and_peak(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)

    def test_quarter(self):
        assert binary_entropy(0.25) == pytest.approx(0.811278124459133, abs=1e-12)

    def test_symmetric(self):
        x = np.linspace(0.01, 0.99, 50)
        assert np.allclose(binary_entropy(x), binary_entropy(1.0 - x), atol=1e-14)

    def test_array_in_array_out(self):
        out = binary_entropy(np.array([0.1, 0.2, 0.3]))
        assert isinstance(out, np.ndarray)
        assert out.shape == (3,)

    def test_scalar_returns_float(self):
        assert isinstance(binary_entropy(0.3), float)

    @pytest.mark.parametrize("bad", [-0.1, 1.5, float("nan")])
    def test_out_of_domain(self, bad):
        with pytest.raises(DomainError):
            binary_entropy(bad)

    def test_inverse(self):
        assert binary_entropy_inv(binary_entropy(0.11)) == pytest.approx(0.11, abs=1e-10)

    def test_inverse_endpoints(self):
        assert binary_entropy_inv(0.0) == 0.0
        assert binary_entropy_inv(1.0) == 0.5

    def test_entropy_of_distribution(self):
        assert entropy([0.25, 0.25, 0.25, 0.25]) == pytest.approx(2.0, abs=1e-14)
        assert entropy([1.0, 0.0]) == 0.0


class TestConvolutionAndRatio:
    """x * p, J(x) and q(x)."""

    def test_convolve(self):
        assert convolve(0.0, 0.2) == pytest.approx(0.2)
        assert convolve(0.5, 0.37) == pytest.approx(0.5)
        assert convolve(0.3, 0.0) == pytest.approx(0.3)

    def test_log_ratio(self):
        assert log_ratio(0.5) == pytest.approx(0.0, abs=1e-15)
        assert log_ratio(0.25) == pytest.approx(math.log2(3.0), abs=1e-14)
        assert log_ratio(0.25, base=math.e) == pytest.approx(math.log(3.0), abs=1e-14)

    def test_log_ratio_antisymmetric(self):
        x = np.linspace(0.05, 0.45, 9)
        assert np.allclose(log_ratio(x), -log_ratio(1.0 - x), atol=1e-13)

    def test_log_ratio_open_interval(self):
        with pytest.raises(DomainError):
            log_ratio(0.0)

    def test_quadratic_term(self):
        assert quadratic_term(0.5) == 0.25
        assert quadratic_term(0.0) == 0.0


class TestSkewFunctions:
    """f_skew, g_bsc and their derivatives."""

    def test_f_skew_values(self):
        assert f_skew(0.0) == pytest.approx(0.0, abs=1e-15)
        assert f_skew(0.5) == pytest.approx(2 * binary_entropy(0.25) - 1.0, abs=1e-14)

    def test_f_skew_symmetric(self):
        x = np.linspace(0.0, 1.0, 21)
        assert np.allclose(f_skew(x), f_skew(1.0 - x), atol=1e-14)

    def test_f_skew_inverse(self):
        for x in (0.01, 0.2, 0.3, 0.49):
            assert f_skew_inv(f_skew(x)) == pytest.approx(x, abs=1e-10)

    def test_f_skew_inverse_endpoints(self):
        assert f_skew_inv(0.0) == 0.0
        assert f_skew_inv(f_skew(0.5)) == 0.5

    def test_f_skew_inverse_domain(self):
        with pytest.raises(DomainError):
            f_skew_inv(f_skew(0.5) + 0.01)

    def test_g_bsc(self):
        assert g_bsc(0.5, 0.1) == pytest.approx(1.0, abs=1e-14)
        assert g_bsc(0.0, 0.1) == pytest.approx(binary_entropy(0.1))

    @pytest.mark.parametrize("x", [0.05, 0.2, 0.35, 0.49])
    def test_f_first_derivative(self, x):
        assert f_skew_d1(x) == pytest.approx(central_difference(f_skew, x), rel=1e-6)

    @pytest.mark.parametrize("x", [0.05, 0.2, 0.35, 0.49])
    def test_f_second_derivative(self, x):
        assert f_skew_d2(x) == pytest.approx(central_difference(f_skew_d1, x), rel=1e-6)

    @pytest.mark.parametrize("p", [1 / 6, 0.25, 0.4])
    def test_g_derivatives(self, p):
        x = 0.3
        assert g_bsc_d1(x, p) == pytest.approx(central_difference(lambda t: g_bsc(t, p), x), rel=1e-6)
        assert g_bsc_d2(x, p) == pytest.approx(central_difference(lambda t: g_bsc_d1(t, p), x), rel=1e-6)

    def test_derivatives_vanish_at_half(self):
        assert f_skew_d1(0.5 - 1e-12) == pytest.approx(0.0, abs=1e-10)
        assert g_bsc_d1(0.5 - 1e-12, 0.25) == pytest.approx(0.0, abs=1e-10)

    def test_derivatives_vectorized(self):
        x = np.linspace(0.01, 0.49, 7)
        assert f_skew_d1(x).shape == (7,)
        assert np.all(f_skew_d1(x) > 0)
        assert np.all(g_bsc_d2(x, 0.2) < 0)


GRID = np.arange(1, 1000) / 1000.0
HALF = np.linspace(0.0, 0.5, 101)


class TestGridProperties:
    """Identities checked across whole grids rather than at sample points."""

    def test_f_derivatives_on_grid(self):
        np.testing.assert_allclose(f_skew_d1(GRID), central_difference(f_skew, GRID), rtol=1e-6, atol=1e-9)
        np.testing.assert_allclose(f_skew_d2(GRID), central_difference(f_skew_d1, GRID), rtol=1e-6, atol=1e-9)

    @pytest.mark.parametrize("p", [1 / 6, 0.25, 0.4])
    def test_g_derivatives_on_grid(self, p):
        np.testing.assert_allclose(
            g_bsc_d1(GRID, p), central_difference(lambda t: g_bsc(t, p), GRID), rtol=1e-6, atol=1e-9
        )
        np.testing.assert_allclose(
            g_bsc_d2(GRID, p), central_difference(lambda t: g_bsc_d1(t, p), GRID), rtol=1e-6, atol=1e-9
        )

    def test_entropy_midpoint_concave(self, rng):
        a = rng.uniform(size=1000)
        b = rng.uniform(size=1000)
        h_mid = binary_entropy((a + b) / 2.0)
        assert np.all(h_mid >= (binary_entropy(a) + binary_entropy(b)) / 2.0 - 1e-15)
        assert np.all((h_mid >= 0.0) & (h_mid <= 1.0))

    def test_inverse_round_trip(self):
        for x in HALF:
            assert binary_entropy_inv(binary_entropy(x)) == pytest.approx(x, abs=1e-7)
            assert f_skew_inv(f_skew(x)) == pytest.approx(x, abs=1e-7)

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.25, 0.5])
    def test_convolve_moves_toward_half(self, p):
        z = convolve(HALF, p)
        assert np.all(z >= HALF - 1e-15)
        assert np.all(z <= 0.5 + 1e-15)

    def test_strictly_increasing(self):
        x = np.linspace(1e-6, 0.5 - 1e-6, 999)
        assert np.all(np.diff(f_skew(x)) > 0)
        for p in (1 / 6, 0.25, 0.4):
            assert np.all(np.diff(g_bsc(x, p)) > 0)
