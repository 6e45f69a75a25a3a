"""Geometry and domain models."""

import math
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GeometryKind(str, Enum):
    """Background metric of the affine chart."""

    FUBINI_STUDY = "fs"
    FLAT = "flat"
    HYPERBOLIC = "hyperbolic"


class GeometryModel(BaseModel):
    """Background Kähler metric, written as ω = scale · ρ(z) dx dy in the chart."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: GeometryKind = Field(..., description="Metric family")
    scale: float = Field(default=1.0, gt=0, description="Constant multiple of the metric")

    def density(self, z: Any) -> np.ndarray:
        """Metric density ρ(z) with ω = ρ dx dy.

        Raises:
            ValueError: Hyperbolic density requested outside the unit disk.
        """
        r2 = np.abs(np.asarray(z, dtype=complex)) ** 2
        if self.kind == GeometryKind.FUBINI_STUDY:
            return self.scale / (1.0 + r2) ** 2
        if self.kind == GeometryKind.HYPERBOLIC:
            if np.any(r2 >= 1.0):
                raise ValueError("hyperbolic metric is only defined on |z| < 1")
            return self.scale / (1.0 - r2) ** 2
        return np.full(r2.shape, self.scale)


class ShapeKind(str, Enum):
    """Supported domain shapes."""

    DISK = "disk"
    ANNULUS = "annulus"
    POLYGON = "polygon"


class Containment(str, Enum):
    """Result of a membership query."""

    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


class Domain(BaseModel):
    """A region U of the affine chart under one background metric.

    The literal form mirrors the field names, e.g.
    ``{"shape": "disk", "center": [0, 0], "radius": 1.0, "geometry": "fs"}``.
    A disk of infinite radius under Fubini–Study is the whole sphere. With
    ``complement`` set the region is the outside of the shape, including ∞.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    shape: ShapeKind = Field(..., description="Shape family")
    geometry: GeometryModel = Field(..., description="Background metric")
    center: tuple[float, float] = Field(default=(0.0, 0.0), description="Disk/annulus center")
    radius: Optional[float] = Field(default=None, gt=0, description="Disk radius")
    r_in: Optional[float] = Field(default=None, gt=0, description="Annulus inner radius")
    r_out: Optional[float] = Field(default=None, gt=0, description="Annulus outer radius")
    vertices: Optional[list[tuple[float, float]]] = Field(
        default=None, description="Polygon vertices in order"
    )
    complement: bool = Field(default=False, description="Use the outside of the shape")

    @field_validator("geometry", mode="before")
    @classmethod
    def _geometry_shorthand(cls, value: Any) -> Any:
        if isinstance(value, str):
            return {"kind": value}
        if isinstance(value, GeometryKind):
            return {"kind": value.value}
        return value

    @model_validator(mode="after")
    def _check_shape_fields(self) -> "Domain":
        if self.shape == ShapeKind.DISK:
            if self.radius is None:
                raise ValueError("disk requires 'radius'")
            if math.isinf(self.radius) and (
                self.geometry.kind != GeometryKind.FUBINI_STUDY or self.center != (0.0, 0.0)
            ):
                raise ValueError("an infinite disk is only the Fubini–Study sphere about 0")
        elif self.shape == ShapeKind.ANNULUS:
            if self.r_in is None or self.r_out is None:
                raise ValueError("annulus requires 'r_in' and 'r_out'")
            if not self.r_in < self.r_out or math.isinf(self.r_out):
                raise ValueError("annulus requires finite r_in < r_out")
        elif self.shape == ShapeKind.POLYGON:
            if not self.vertices or len(self.vertices) < 3:
                raise ValueError("polygon requires at least 3 vertices")
        if self.complement and self.geometry.kind != GeometryKind.FUBINI_STUDY:
            raise ValueError("complement domains need the Fubini–Study sphere")
        return self

    @property
    def center_z(self) -> complex:
        """Center as a complex number."""
        return complex(*self.center)

    @property
    def is_full_sphere(self) -> bool:
        """Whether the domain is the whole sphere (empty boundary)."""
        return (
            self.shape == ShapeKind.DISK
            and self.radius is not None
            and math.isinf(self.radius)
            and not self.complement
        )
