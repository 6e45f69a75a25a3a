"""Monte Carlo summary models."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class MomentSummary(BaseModel):
    """Aggregated moments of one statistic over non-degenerate trials."""

    model_config = ConfigDict(frozen=True)

    n_trials: int = Field(..., ge=0, description="Trials kept in the statistics")
    n_degenerate: int = Field(default=0, ge=0, description="Trials excluded as degenerate")
    mean: float = Field(..., description="Sample mean")
    variance: float = Field(..., ge=0, description="Unbiased sample variance")
    stderr_mean: float = Field(..., ge=0, description="Standard error of the mean")
    stderr_variance: float = Field(..., ge=0, description="Standard error of the variance")


class StandardizationSource(str, Enum):
    """Where the mean and standard deviation used to standardize come from."""

    EMPIRICAL = "empirical"
    BIPOTENTIAL = "bipotential"


class Standardization(BaseModel):
    """Centering and scaling applied before the KS test."""

    model_config = ConfigDict(frozen=True)

    source: StandardizationSource = Field(..., description="Origin of the moments")
    mean_used: float = Field(..., description="Mean subtracted")
    sd_used: float = Field(..., gt=0, description="Standard deviation divided by")


class NormalityReport(BaseModel):
    """One-sample Kolmogorov–Smirnov test against the standard normal law."""

    model_config = ConfigDict(frozen=True)

    n_samples: int = Field(..., ge=1, description="Sample count")
    ks_statistic: float = Field(..., ge=0, le=1, description="Sup distance of CDFs")
    p_value: float = Field(..., ge=0, le=1, description="KS p-value")
    critical_value_5pct: float = Field(..., gt=0, description="Asymptotic 5% critical value")
    standardization: Standardization = Field(..., description="Moments used")

    @property
    def passed(self) -> bool:
        """Whether the statistic stays below the 5% critical value."""
        return self.ks_statistic < self.critical_value_5pct


class PairLogMoment(BaseModel):
    """Monte Carlo estimate of E[log|c₁|·log|c₁t + c₂√(1−t²)|]."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(..., ge=0, lt=1, description="Correlation parameter")
    n_draws: int = Field(..., ge=1, description="Draws used")
    estimate: float = Field(..., description="Sample mean")
    stderr: float = Field(..., ge=0, description="Standard error")
    expected: float = Field(..., description="γ²/4 + π²·G̃(t)")

    @property
    def z_score(self) -> float:
        """(estimate − expected)/stderr."""
        return (self.estimate - self.expected) / self.stderr if self.stderr > 0 else 0.0


class SweepRow(BaseModel):
    """One row of a variance-versus-N table."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Degree")
    n_trials: int = Field(..., ge=0, description="Trials kept")
    mean: float = Field(..., description="Mean statistic")
    var: float = Field(..., ge=0, description="Empirical variance")
    stderr_mean: float = Field(..., ge=0, description="Standard error of the mean")
    stderr_var: float = Field(..., ge=0, description="Standard error of the variance")
    prediction: float = Field(..., description="Leading-order variance prediction")
    ratio: Optional[float] = Field(None, description="var / prediction")
