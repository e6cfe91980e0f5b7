"""Unit tests for root finding, differences and grid enumeration.

Run with: uv run pytest src/tests/test_numerics.py -v
"""

import math

import numpy as np
import pytest

from src.exceptions import GridParameterError, RootNotBracketedError
from src.utils.numerics import (
    central_difference,
    find_root,
    nondecreasing_tuples,
    positive_compositions,
    uniform_grid,
)


class TestFindRoot:
    def test_linear(self):
        assert find_root(lambda x: x - 0.3, 0.0, 1.0) == pytest.approx(0.3, abs=1e-13)

    def test_root_at_endpoint(self):
        assert find_root(lambda x: x, 0.0, 1.0) == 0.0

    def test_not_bracketed(self):
        with pytest.raises(RootNotBracketedError):
            find_root(lambda x: x + 1.0, 0.0, 1.0)


class TestCentralDifference:
    def test_sine(self):
        assert central_difference(math.sin, 0.7) == pytest.approx(math.cos(0.7), rel=1e-9)

    def test_vectorized(self):
        x = np.array([0.1, 0.5, 0.9])
        assert np.allclose(central_difference(np.exp, x), np.exp(x), rtol=1e-9)


class TestGrids:
    def test_uniform_grid(self):
        grid = uniform_grid(0.0, 1.0, 5)
        assert grid.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_uniform_grid_too_small(self):
        with pytest.raises(GridParameterError):
            uniform_grid(0.0, 1.0, 1)

    def test_positive_compositions(self):
        assert positive_compositions(4, 2).tolist() == [[1, 3], [2, 2], [3, 1]]
        assert positive_compositions(3, 1).tolist() == [[3]]

    def test_positive_compositions_empty(self):
        assert positive_compositions(2, 3).shape == (0, 3)

    def test_composition_count(self):
        # C(total-1, parts-1)
        assert len(positive_compositions(10, 3)) == math.comb(9, 2)

    def test_nondecreasing_tuples(self):
        tuples = nondecreasing_tuples(3, 2)
        assert tuples.tolist() == [[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]]

    def test_nondecreasing_tuple_count(self):
        assert len(nondecreasing_tuples(5, 3)) == math.comb(7, 3)
