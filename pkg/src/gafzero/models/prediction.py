"""Prediction and kernel-scan models."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Theorem(str, Enum):
    """Asymptotic statement a prediction comes from."""

    NUMBER_VARIANCE = "number_variance"
    VOLUME_VARIANCE = "volume_variance"
    SMOOTH_VARIANCE = "smooth_variance"
    EXPECTED_COUNT = "expected_count"


class Prediction(BaseModel):
    """Leading-order prediction constant × N^power × geometric factor."""

    model_config = ConfigDict(frozen=True)

    theorem: Theorem = Field(..., description="Source statement")
    N: int = Field(..., ge=1, description="Degree")
    m: int = Field(default=1, ge=1, description="Complex dimension")
    constant: float = Field(..., description="Universal constant (ν_m, κ_m, 1/π)")
    power: float = Field(..., description="Exponent of N")
    geometric_factor: float = Field(..., ge=0, description="Length, volume or norm factor")
    remainder_exponent: float = Field(
        default=-0.5, description="Relative order of the remainder (up to ε)"
    )
    alternate_value: Optional[float] = Field(
        None, description="Equivalent second form (smooth variance, m=1)"
    )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def leading_value(self) -> float:
        """constant × N^power × geometric factor."""
        return float(self.constant * float(self.N) ** self.power * self.geometric_factor)


class ScalingResidual(BaseModel):
    """R_N(u, v) = P_N(z₀+u/√N, z₀+v/√N)·e^{|u−v|²/2} − 1 in normal coordinates."""

    model_config = ConfigDict(frozen=True)

    z0: complex = Field(..., description="Base point")
    u: complex = Field(..., description="First scaled offset")
    v: complex = Field(..., description="Second scaled offset")
    N: int = Field(..., ge=1, description="Degree")
    residual: float = Field(..., description="R_N(u, v)")


class ScalingScan(BaseModel):
    """Maximum of |R_N| over a grid of scaled offsets."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Degree")
    bound: float = Field(..., gt=0, description="Offset bound on |u| and |v|")
    max_residual: float = Field(..., ge=0, description="max |R_N|")
    argmax: ScalingResidual = Field(..., description="Where the maximum is attained")


class DecayScan(BaseModel):
    """Maximum of P_N outside the near-diagonal band d(z, w) ≥ b√(log N / N)."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=2, description="Degree")
    b: float = Field(..., gt=0, description="Band multiplier")
    threshold_distance: float = Field(..., gt=0, description="b√(log N / N)")
    max_kernel: float = Field(..., ge=0, le=1, description="max P_N beyond the band")
    reference: float = Field(..., gt=0, description="N^{-b²/2}, the Gaussian value at the band")


class NormalityConditions(BaseModel):
    """Numerical proxies for the two sufficient conditions of asymptotic normality."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Degree")
    correlation_mass: float = Field(..., ge=0, description="sup_z ∫P_N(z,w) ω(w)")
    ratio: float = Field(..., description="∫∫P_N²ψψ ω ω / correlation_mass")
    limit: float = Field(..., description="½∫ψ² ω, the large-N value of the ratio")
