"""Ensemble and sample models."""

import math
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import gammaln

from .geometry import GeometryKind, GeometryModel

TAIL_LOG_TOLERANCE = math.log(1e-14)


class EnsembleFamily(str, Enum):
    """Model Gaussian ensembles."""

    SU2 = "su2"
    BARGMANN_FOCK = "bf"
    SU11 = "su11"


FAMILY_GEOMETRY: dict[EnsembleFamily, GeometryKind] = {
    EnsembleFamily.SU2: GeometryKind.FUBINI_STUDY,
    EnsembleFamily.BARGMANN_FOCK: GeometryKind.FLAT,
    EnsembleFamily.SU11: GeometryKind.HYPERBOLIC,
}

DEFAULT_RADIUS_BOUND: dict[EnsembleFamily, float] = {
    EnsembleFamily.BARGMANN_FOCK: 1.0,
    EnsembleFamily.SU11: 0.9,
}


def default_truncation(family: EnsembleFamily, n: int, radius_bound: float) -> int:
    """Minimum truncation degree for series ensembles.

    Bargmann–Fock uses the Poisson-tail rule ⌈NR² + 8√(NR²) + 20⌉. SU(1,1) takes the
    larger of that rule and the first index past the peak of the weight profile
    C(N+n−1, n) R^{2n} (1−R²)^N whose tail mass drops below 1e-14.

    Args:
        family: Ensemble family.
        n: Degree N.
        radius_bound: Radius R bounding every chart point of the experiment.

    Returns:
        Truncation degree K (the series keeps indices 0..K).
    """
    if family == EnsembleFamily.SU2:
        return n
    nr2 = n * radius_bound**2
    poisson = math.ceil(nr2 + 8.0 * math.sqrt(nr2) + 20.0)
    if family == EnsembleFamily.BARGMANN_FOCK:
        return poisson
    if radius_bound >= 1.0:
        raise ValueError("SU(1,1) radius bound must be < 1")
    r2 = radius_bound**2
    log_norm = n * math.log1p(-r2)
    peak = (n - 1) * r2 / (1.0 - r2)
    # Past the peak the terms decay at least geometrically; bound the tail by a geometric sum.
    k = max(int(math.ceil(peak)), 1)
    while True:
        log_term = (
            gammaln(n + k) - gammaln(k + 1) - gammaln(n) + k * math.log(r2) + log_norm
        )
        ratio = (n + k) / (k + 1) * r2
        if ratio < 1.0 and log_term - math.log1p(-ratio) < TAIL_LOG_TOLERANCE:
            return max(poisson, k)
        k += 1


class EnsembleSpec(BaseModel):
    """Which model ensemble to sample, at what degree and truncation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: EnsembleFamily = Field(..., description="Model family")
    N: int = Field(..., ge=1, description="Line-bundle power (degree)")
    truncation_degree: Optional[int] = Field(
        default=None, ge=1, description="Series truncation (BF/SU11); defaults to the rule"
    )
    radius_bound: Optional[float] = Field(
        default=None, gt=0, description="Chart radius covered by the experiment (BF/SU11)"
    )

    @model_validator(mode="after")
    def _check_family(self) -> "EnsembleSpec":
        if self.family == EnsembleFamily.SU2:
            if self.truncation_degree not in (None, self.N):
                raise ValueError("SU2 has no truncation; degree is N")
            return self
        if self.family == EnsembleFamily.SU11:
            if self.N < 2:
                raise ValueError("SU11 requires N >= 2")
            if self.radius_bound is not None and self.radius_bound >= 1.0:
                raise ValueError("SU11 radius bound must lie inside the unit disk")
        if self.truncation_degree is not None:
            minimum = default_truncation(self.family, self.N, self.bound)
            if self.truncation_degree < minimum:
                raise ValueError(
                    f"truncation_degree {self.truncation_degree} below the minimum {minimum} "
                    f"for N={self.N}, R={self.bound}"
                )
        return self

    @property
    def bound(self) -> float:
        """Radius bound actually used by the truncation rule."""
        if self.radius_bound is not None:
            return self.radius_bound
        return DEFAULT_RADIUS_BOUND.get(self.family, math.inf)

    @property
    def degree(self) -> int:
        """Polynomial degree of a sample (N for SU2, the truncation otherwise)."""
        if self.family == EnsembleFamily.SU2:
            return self.N
        if self.truncation_degree is not None:
            return self.truncation_degree
        return default_truncation(self.family, self.N, self.bound)

    @property
    def dimension(self) -> int:
        """Length of the coefficient vector."""
        return self.degree + 1

    @property
    def geometry(self) -> GeometryModel:
        """Natural background metric of the family."""
        return GeometryModel(kind=FAMILY_GEOMETRY[self.family])

    def with_degree(self, n: int) -> "EnsembleSpec":
        """Same family and radius bound at another N, truncation re-derived."""
        return EnsembleSpec(family=self.family, N=n, radius_bound=self.radius_bound)

    def label(self) -> str:
        """Compact literal, e.g. ``su2:128``."""
        if self.family == EnsembleFamily.SU2:
            return f"su2:{self.N}"
        return f"{self.family.value}:{self.N}:{self.degree}"


class SectionSample(BaseModel):
    """One Gaussian coefficient vector drawn for a trial."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: np.ndarray = Field(..., description="i.i.d. standard complex Gaussians")
    ensemble: EnsembleSpec = Field(..., description="Ensemble the sample belongs to")
    seed: int = Field(default=0, ge=0, description="Base seed")
    trial_index: int = Field(default=0, ge=0, description="Trial counter")

    @model_validator(mode="before")
    @classmethod
    def _as_complex_array(cls, data: Any) -> Any:
        if isinstance(data, dict) and "coefficients" in data:
            coefficients = np.asarray(data["coefficients"], dtype=complex)
            coefficients.setflags(write=False)
            data = {**data, "coefficients": coefficients}
        return data

    @model_validator(mode="after")
    def _check_dimension(self) -> "SectionSample":
        if self.coefficients.ndim != 1 or len(self.coefficients) != self.ensemble.dimension:
            raise ValueError(
                f"expected {self.ensemble.dimension} coefficients, "
                f"got shape {self.coefficients.shape}"
            )
        return self
