"""Request and response bodies of the HTTP API."""

from typing import Annotated, Any, Optional

from pydantic import BaseModel, BeforeValidator, Field, model_validator

from .ensemble import EnsembleSpec
from .geometry import Domain, GeometryKind
from .literals import parse_domain, parse_ensemble, parse_test_function
from .zeros import TestFunction


def _literal(parser: Any) -> BeforeValidator:
    return BeforeValidator(lambda value: parser(value) if isinstance(value, str) else value)


EnsembleInput = Annotated[EnsembleSpec, _literal(parse_ensemble)]
DomainInput = Annotated[Domain, _literal(parse_domain)]
TestFunctionInput = Annotated[TestFunction, _literal(parse_test_function)]


class NumberVarianceRequest(BaseModel):
    """Inputs of the √N number-variance law."""

    N: int = Field(..., ge=1, description="Degree")
    domain: DomainInput = Field(..., description="Domain literal or object")


class VolumeVarianceRequest(BaseModel):
    """Inputs of the N^{3/2−m} volume law."""

    N: int = Field(..., ge=1, description="Degree")
    m: int = Field(default=1, ge=1, description="Complex dimension")
    boundary_volume: float = Field(..., ge=0, description="Vol(∂U)")


class SmoothVarianceRequest(BaseModel):
    """Inputs of the smooth linear-statistic law."""

    N: int = Field(..., ge=1, description="Degree")
    m: int = Field(default=1, ge=1, description="Complex dimension")
    test_function: TestFunctionInput = Field(..., description="Bump literal or object")
    geometry: Optional[GeometryKind] = Field(None, description="Metric for the norms")


class ExpectedCountRequest(BaseModel):
    """Inputs of the exact expected count."""

    ensemble: EnsembleInput = Field(..., description="Ensemble literal or object")
    domain: DomainInput = Field(..., description="Domain literal or object")


class KernelRequest(BaseModel):
    """Pairs (z_i, w_i) at which to evaluate kernel quantities."""

    ensemble: EnsembleInput = Field(..., description="Ensemble literal or object")
    z: list[complex] = Field(..., min_length=1, description="First points")
    w: list[complex] = Field(..., min_length=1, description="Second points")

    @model_validator(mode="after")
    def _same_length(self) -> "KernelRequest":
        if len(self.z) != len(self.w):
            raise ValueError("z and w must have the same length")
        return self


class UniversalConstants(BaseModel):
    """ν_m and κ_m for one dimension."""

    m: int = Field(..., ge=1, description="Complex dimension")
    nu: float = Field(..., description="Number-variance constant ν_m")
    kappa: float = Field(..., description="Smooth-variance constant κ_m")


class KernelValues(BaseModel):
    """P_N, Λ_N and the Wirtinger derivatives of Λ_N; None where undefined."""

    ensemble: str = Field(..., description="Ensemble label")
    kernel: list[float] = Field(..., description="P_N(z, w)")
    lam: list[Optional[float]] = Field(..., description="Λ_N = −log P_N")
    dzbar: list[Optional[complex]] = Field(..., description="∂Λ/∂z̄")
    dwbar: list[Optional[complex]] = Field(..., description="∂Λ/∂w̄")
    dzbar_dwbar: list[Optional[complex]] = Field(..., description="∂²Λ/∂z̄∂w̄")
    dzbar_dw: list[Optional[complex]] = Field(..., description="∂²Λ/∂z̄∂w")


class BipotentialValues(BaseModel):
    """Q_N and its mixed derivative; the derivative is None on the diagonal."""

    ensemble: str = Field(..., description="Ensemble label")
    q: list[float] = Field(..., description="Q_N(z, w) = G̃(P_N)")
    q_dzbar_dwbar: list[Optional[complex]] = Field(..., description="∂²Q_N/∂z̄∂w̄")
