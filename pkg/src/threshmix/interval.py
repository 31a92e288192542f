"""Cost-ratio intervals on which threshold mixtures are evaluated."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IntervalAtBoundaryError


def log_odds(c: float) -> float:
    """log(c / (1 - c)) for c strictly inside (0, 1)."""
    if not 0.0 < c < 1.0:
        raise ValueError(f"log-odds undefined at c={c}")
    return math.log(c / (1.0 - c))


@dataclass(frozen=True)
class ThresholdInterval:
    """Cost-ratio interval [a, b] with 0 <= a < b <= 1.

    Log-odds endpoints are only defined when the interval is strictly
    interior; operations that integrate on the log-odds axis must check
    :meth:`require_interior` first.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b <= 1.0):
            raise ValueError(f"need 0 <= a < b <= 1, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def is_interior(self) -> bool:
        return self.a > 0.0 and self.b < 1.0

    def require_interior(self, what: str = "operation") -> None:
        if not self.is_interior:
            raise IntervalAtBoundaryError(
                f"{what} requires a strictly interior interval, got [{self.a}, {self.b}]"
            )

    @property
    def log_odds_a(self) -> float:
        return log_odds(self.a)

    @property
    def log_odds_b(self) -> float:
        return log_odds(self.b)

    @property
    def log_odds_width(self) -> float:
        """Length of the interval on the log-odds axis."""
        return self.log_odds_b - self.log_odds_a

    def clip(self, values):
        """Project values onto [a, b] (the clip primitive of the closed forms)."""
        import numpy as np

        return np.clip(values, self.a, self.b)

    def as_tuple(self) -> tuple[float, float]:
        return (self.a, self.b)


def as_interval(interval) -> ThresholdInterval:
    """Coerce a ThresholdInterval or (a, b) pair."""
    if isinstance(interval, ThresholdInterval):
        return interval
    a, b = interval
    return ThresholdInterval(float(a), float(b))
