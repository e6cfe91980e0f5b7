"""Pytest configuration and shared fixtures."""

import os

import numpy as np
import pytest
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line(
        "markers", "slow: acceptance sweeps over full grids (skip with RRKIT_SKIP_SLOW=1)"
    )


@pytest.fixture(autouse=True)
def _check_slow(request):
    """Auto-skip slow tests when RRKIT_SKIP_SLOW is set."""
    if not any(m.name == "slow" for m in request.node.iter_markers()):
        return
    if os.getenv("RRKIT_SKIP_SLOW", "") not in ("", "0"):
        pytest.skip("RRKIT_SKIP_SLOW set - skipping slow sweep")


@pytest.fixture
def rng():
    """Seeded numpy Generator."""
    return np.random.default_rng(0)


@pytest.fixture
def bssc_quarter():
    """BSSC + BSC(1/4) channel triple."""
    from src.dmc import bssc_triple

    return bssc_triple(0.25)


@pytest.fixture
def det_y3_triple():
    """Triple whose Y3 is a noiseless copy of X."""
    from src.dmc import ChannelTriple

    return ChannelTriple.from_matrices(
        [[0.5, 0.5], [0.0, 1.0]],
        [[1.0, 0.0], [0.5, 0.5]],
        [[1.0, 0.0], [0.0, 1.0]],
    )


@pytest.fixture
def small_codebook():
    """n=3 base codebook, 2 x 2 messages, maximum-likelihood decoders."""
    from src.codebook_symmetry import Codebook

    return Codebook(3, {
        (0, 0): "000",
        (0, 1): "011",
        (1, 0): "101",
        (1, 1): "110",
    })
