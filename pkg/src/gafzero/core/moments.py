"""Streaming central moments with an exact pairwise merge."""

import math
from dataclasses import dataclass

import numpy as np

from ..models import MomentSummary


@dataclass
class MomentAccumulator:
    """Count, mean and central sums M2..M4 of a stream of reals."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    m4: float = 0.0

    @classmethod
    def from_values(cls, values: np.ndarray) -> "MomentAccumulator":
        """Accumulator of a batch, centered at its own mean."""
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return cls()
        mean = float(np.mean(values))
        d = values - mean
        return cls(
            n=int(values.size),
            mean=mean,
            m2=float(np.sum(d**2)),
            m3=float(np.sum(d**3)),
            m4=float(np.sum(d**4)),
        )

    def add(self, values: np.ndarray) -> "MomentAccumulator":
        """Fold a batch into the stream."""
        return self.merge(MomentAccumulator.from_values(values))

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        """Combine two disjoint streams (Pébay's update formulas)."""
        if other.n == 0:
            return MomentAccumulator(self.n, self.mean, self.m2, self.m3, self.m4)
        if self.n == 0:
            return MomentAccumulator(other.n, other.mean, other.m2, other.m3, other.m4)
        na, nb = float(self.n), float(other.n)
        n = na + nb
        delta = other.mean - self.mean
        mean = self.mean + delta * nb / n
        m2 = self.m2 + other.m2 + delta**2 * na * nb / n
        m3 = (
            self.m3
            + other.m3
            + delta**3 * na * nb * (na - nb) / n**2
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n
        )
        m4 = (
            self.m4
            + other.m4
            + delta**4 * na * nb * (na**2 - na * nb + nb**2) / n**3
            + 6.0 * delta**2 * (na**2 * other.m2 + nb**2 * self.m2) / n**2
            + 4.0 * delta * (na * other.m3 - nb * self.m3) / n
        )
        return MomentAccumulator(self.n + other.n, mean, m2, m3, m4)

    @property
    def variance(self) -> float:
        """Unbiased sample variance."""
        return self.m2 / (self.n - 1) if self.n > 1 else 0.0

    def summary(self, n_degenerate: int = 0) -> MomentSummary:
        """Freeze into a MomentSummary; the variance error uses the fourth moment."""
        n = self.n
        variance = max(self.variance, 0.0)
        stderr_mean = math.sqrt(variance / n) if n > 0 else 0.0
        if n > 3:
            mu4 = self.m4 / n
            spread = mu4 - (n - 3) / (n - 1) * variance**2
            stderr_variance = math.sqrt(max(spread, 0.0) / n)
        else:
            stderr_variance = 0.0
        return MomentSummary(
            n_trials=n,
            n_degenerate=n_degenerate,
            mean=self.mean,
            variance=variance,
            stderr_mean=stderr_mean,
            stderr_variance=stderr_variance,
        )
