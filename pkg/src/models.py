"""Shared result types for the rate-region toolkit."""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any

from .exceptions import DomainError


class RegimeLabel(str, Enum):
    """Which expression of the BSSC+BSC capacity region applies."""
    SUM_RATE_ONLY = "SumRateOnly"
    THREE_CONSTRAINT = "ThreeConstraint"
    NO_SUM_RATE = "NoSumRate"


class Receiver(IntEnum):
    """Receiver index in the 3-receiver broadcast channel."""
    Y1 = 1
    Y2 = 2
    Y3 = 3


@dataclass(frozen=True, order=True)
class RatePair:
    """Rate pair (R0, R1) in bits."""
    r0: float
    r1: float

    def __post_init__(self):
        # tiny negatives from floating point are clipped
        if self.r0 < -1e-12 or self.r1 < -1e-12:
            raise DomainError("rate pair", (self.r0, self.r1), "[0, inf)^2")
        object.__setattr__(self, "r0", max(float(self.r0), 0.0))
        object.__setattr__(self, "r1", max(float(self.r1), 0.0))

    def as_tuple(self) -> tuple[float, float]:
        return (self.r0, self.r1)


@dataclass
class Verdict:
    """Outcome of a numerical verification.

    Attributes:
        check: Name of the check
        passed: Whether the checked inequality/identity held
        min_slack: Smallest observed slack (negative means violated)
        p: BSC crossover parameter, if any
        grid: Grid size or number of trials
        details: Additional check-specific numbers
    """
    check: str
    passed: bool
    min_slack: float
    p: float | None = None
    grid: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready view ({"check", "p", "grid", "min_slack", "pass", ...})."""
        doc = {
            "check": self.check,
            "p": self.p,
            "grid": self.grid,
            "min_slack": self.min_slack,
            "pass": bool(self.passed),
        }
        doc.update(self.details)
        return doc
