"""Streaming moment accumulation with compensated summation.

Chunked Monte Carlo runs reduce per-chunk partials in a fixed order, so the
final estimates are bitwise reproducible no matter how many workers ran.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class KahanSum:
    """Compensated running sum."""

    __slots__ = ("value", "_comp")

    def __init__(self, value: float = 0.0) -> None:
        self.value = float(value)
        self._comp = 0.0

    def add(self, term: float) -> None:
        y = float(term) - self._comp
        t = self.value + y
        self._comp = (t - self.value) - y
        self.value = t


@dataclass(frozen=True)
class EnsembleEstimate:
    """Sample mean with spread: unbiased variance and standard error."""

    mean: float
    variance: float
    count: int
    std_error: float

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.variance < 0.0:
            raise ValueError(f"variance must be non-negative, got {self.variance!r}")
        expected_se = float(np.sqrt(self.variance / self.count))
        if abs(self.std_error - expected_se) > 1e-12:
            raise ValueError(
                f"std_error {self.std_error!r} inconsistent with "
                f"sqrt(variance / count) = {expected_se!r}"
            )

    @classmethod
    def from_moments(cls, count: int, total: float, total_sq: float) -> "EnsembleEstimate":
        """Estimate from streaming moments (sum and sum of squares).

        A single sample has no defined spread, so count must be >= 2.
        """
        if count < 2:
            raise ValueError("variance is undefined for fewer than 2 samples")
        mean = total / count
        variance = max(0.0, (total_sq - total * mean) / (count - 1))
        return cls(
            mean=float(mean),
            variance=float(variance),
            count=int(count),
            std_error=float(np.sqrt(variance / count)),
        )

    @classmethod
    def exact(cls, value: float, count: int) -> "EnsembleEstimate":
        """Degenerate estimate for quantities known without sampling."""
        return cls(mean=float(value), variance=0.0, count=int(count), std_error=0.0)


class MomentAccumulator:
    """Count, compensated sum, compensated sum of squares."""

    __slots__ = ("count", "_total", "_total_sq")

    def __init__(self) -> None:
        self.count = 0
        self._total = KahanSum()
        self._total_sq = KahanSum()

    def add(self, value: float) -> None:
        self.count += 1
        self._total.add(value)
        self._total_sq.add(value * value)

    def merge(self, count: int, total: float, total_sq: float) -> None:
        """Fold in one chunk's partials; call in a fixed chunk order to keep
        results independent of worker scheduling."""
        self.count += int(count)
        self._total.add(total)
        self._total_sq.add(total_sq)

    @property
    def total(self) -> float:
        return self._total.value

    @property
    def total_sq(self) -> float:
        return self._total_sq.value

    def partials(self) -> tuple[int, float, float]:
        return self.count, self.total, self.total_sq

    def to_estimate(self) -> EnsembleEstimate:
        return EnsembleEstimate.from_moments(self.count, self.total, self.total_sq)
