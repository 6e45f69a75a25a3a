"""Zero sets, counts and test functions."""

import math
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .geometry import GeometryKind, GeometryModel


class RootMethod(str, Enum):
    """How a zero set or count was obtained."""

    ROOTS = "roots"
    ARGUMENT_PRINCIPLE = "argument_principle"


class ZeroSet(BaseModel):
    """Chart zeros of one sample."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray = Field(..., description="Complex zeros in the affine chart")
    residual_log_moduli: np.ndarray = Field(
        ..., description="log of the relative backward error at each zero"
    )
    method: RootMethod = Field(default=RootMethod.ROOTS, description="Producing method")
    iterations: int = Field(default=0, ge=0, description="Iterations used")
    converged: bool = Field(default=True, description="Whether every root met the tolerance")

    @model_validator(mode="before")
    @classmethod
    def _as_arrays(cls, data: Any) -> Any:
        if isinstance(data, dict):
            data = dict(data)
            data["points"] = np.asarray(data.get("points", []), dtype=complex)
            data["residual_log_moduli"] = np.asarray(
                data.get("residual_log_moduli", np.zeros(len(data["points"]))), dtype=float
            )
        return data

    def __len__(self) -> int:
        return len(self.points)


class CountResult(BaseModel):
    """Zero count inside a domain."""

    model_config = ConfigDict(frozen=True)

    count: int = Field(..., ge=0, description="Zeros strictly inside")
    boundary_flag: bool = Field(default=False, description="A zero lies within tol of ∂U")


class TestFunction(BaseModel):
    """Gaussian bump φ(z) = A·exp(−|z−a|²/σ²) on the chart.

    Provides φ, its Euclidean Laplacian and the norms entering the smooth
    variance. ‖∂∂̄φ‖² is always a quarter of ‖Δφ‖² in the same metric.
    """

    __test__ = False
    model_config = ConfigDict(frozen=True, extra="forbid")

    center: tuple[float, float] = Field(default=(0.0, 0.0), description="Bump center a")
    sigma: float = Field(..., gt=0, description="Width σ")
    amplitude: float = Field(default=1.0, description="Peak value A")

    @property
    def center_z(self) -> complex:
        """Center as a complex number."""
        return complex(*self.center)

    @property
    def support_radius(self) -> float:
        """Radius beyond which φ and Δφ are below 1e-14 relative."""
        return 6.0 * self.sigma

    @property
    def is_zero(self) -> bool:
        """Whether φ vanishes identically."""
        return self.amplitude == 0.0

    def value(self, z: Any) -> np.ndarray:
        """φ(z)."""
        r2 = np.abs(np.asarray(z, dtype=complex) - self.center_z) ** 2
        return self.amplitude * np.exp(-r2 / self.sigma**2)

    def laplacian(self, z: Any) -> np.ndarray:
        """Euclidean Laplacian Δφ(z) = φ·(4r²/σ⁴ − 4/σ²)."""
        r2 = np.abs(np.asarray(z, dtype=complex) - self.center_z) ** 2
        s2 = self.sigma**2
        return self.amplitude * np.exp(-r2 / s2) * (4.0 * r2 / s2**2 - 4.0 / s2)

    def laplacian_norm_sq(self, geometry: Optional[GeometryModel] = None) -> float:
        """‖Δ_ω φ‖² in L²(ω); Euclidean closed form 4πA²/σ² when no metric is given.

        Args:
            geometry: Background metric; ``None`` or unit flat uses the closed form.

        Returns:
            The squared norm ∫(Δφ)²/ρ dx dy.
        """
        closed = 4.0 * math.pi * self.amplitude**2 / self.sigma**2
        if geometry is None or geometry.kind == GeometryKind.FLAT:
            return closed / (1.0 if geometry is None else geometry.scale)
        return self._weighted_laplacian_norm_sq(geometry)

    def dbar_norm_sq(self, geometry: Optional[GeometryModel] = None) -> float:
        """‖∂∂̄φ‖² = ¼‖Δφ‖²."""
        return 0.25 * self.laplacian_norm_sq(geometry)

    def integral(self, geometry: Optional[GeometryModel] = None) -> float:
        """∫φ ω; Euclidean closed form πAσ² when no metric is given."""
        if geometry is None or geometry.kind == GeometryKind.FLAT:
            return math.pi * self.amplitude * self.sigma**2 * (
                1.0 if geometry is None else geometry.scale
            )
        z, w = self._polar_nodes()
        rho = geometry.density(z)
        return float(np.sum(w * self.value(z) * rho))

    def _weighted_laplacian_norm_sq(self, geometry: GeometryModel) -> float:
        z, w = self._polar_nodes()
        rho = geometry.density(z)
        return float(np.sum(w * self.laplacian(z) ** 2 / rho))

    def _polar_nodes(
        self, n_radial: int = 96, n_angular: int = 96
    ) -> tuple[np.ndarray, np.ndarray]:
        x, wx = np.polynomial.legendre.leggauss(n_radial)
        r_max = self.support_radius
        r = 0.5 * r_max * (x + 1.0)
        wr = 0.5 * r_max * wx * r
        theta = 2.0 * math.pi * np.arange(n_angular) / n_angular
        z = self.center_z + r[:, None] * np.exp(1j * theta)[None, :]
        w = np.broadcast_to(wr[:, None] * (2.0 * math.pi / n_angular), z.shape)
        return z.ravel(), w.ravel()
