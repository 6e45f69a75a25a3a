"""Quadrature configuration and result models."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class DiagonalMode(str, Enum):
    """Handling of the z = w diagonal in boundary double integrals."""

    OFFSET_GRIDS = "offset"
    LOCAL_REFINEMENT = "refine"


class BoundaryQuadrature(BaseModel):
    """Settings for the ∂U × ∂U integral."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int | None = Field(
        default=None, ge=16, description="Nodes per factor; default max(256, 16⌈√N⌉·perimeter)"
    )
    mode: DiagonalMode = Field(default=DiagonalMode.OFFSET_GRIDS, description="Diagonal handling")
    levels: int = Field(default=1, ge=1, le=6, description="Refinement doublings")
    tolerance: float = Field(default=1e-4, gt=0, description="Relative refinement tolerance")
    imag_tolerance: float = Field(default=1e-8, gt=0, description="Relative |Im| tolerance")
    band: float = Field(default=10.0, gt=0, description="Refined band half-width × 1/√N")


class SmoothQuadrature(BaseModel):
    """Settings for the 2-D × 2-D smooth variance integral."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_outer: int = Field(default=40, ge=8, description="Gauss points per axis, outer box")
    n_radial: int = Field(default=48, ge=8, description="Gauss points in the inner radius")
    n_angular: int = Field(default=32, ge=8, description="Trapezoid points in the inner angle")
    levels: int = Field(default=1, ge=0, le=3, description="Refinement doublings")
    tolerance: float = Field(default=1e-3, gt=0, description="Relative refinement tolerance")


class RefinementRow(BaseModel):
    """One refinement step."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Resolution parameter")
    value: float = Field(..., description="Integral value")
    delta: float = Field(..., description="|value − previous value|")


class QuadratureResult(BaseModel):
    """Integral value with a refinement-based error estimate."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="Finest-level value")
    error_estimate: float = Field(..., ge=0, description="Last refinement difference")
    imaginary_part: float = Field(default=0.0, description="Residual imaginary part")
    table: list[RefinementRow] = Field(default_factory=list, description="Refinement history")
