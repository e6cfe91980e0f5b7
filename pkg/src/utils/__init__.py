"""Utility modules."""

from .numerics import (
    central_difference,
    find_root,
    nondecreasing_tuples,
    positive_compositions,
    uniform_grid,
)

__all__ = [
    "central_difference",
    "find_root",
    "nondecreasing_tuples",
    "positive_compositions",
    "uniform_grid",
]
