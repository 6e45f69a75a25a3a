"""Base kernel evaluator interface."""

import math
from abc import ABC, abstractmethod
from typing import Any, ClassVar, NamedTuple, Optional

import numpy as np
from scipy.special import logsumexp

from ..models import EnsembleFamily, EnsembleSpec, GeometryModel


class LambdaDerivatives(NamedTuple):
    """Λ_N = −log P_N with its Wirtinger derivatives at (z, w)."""

    value: np.ndarray
    dzbar: np.ndarray
    dwbar: np.ndarray
    dzbar_dwbar: np.ndarray
    dzbar_dw: np.ndarray
    on_diagonal: np.ndarray


def as_complex(z: Any) -> np.ndarray:
    """Coerce scalars and sequences to a complex ndarray."""
    return np.asarray(z, dtype=complex)


class KernelEvaluator(ABC):
    """Closed-form Szegő kernel data for one model ensemble.

    Π_N is kept through its logarithm; P_N is always exp(−Λ_N), so tiny
    correlations underflow gracefully to zero instead of producing NaNs.
    """

    family: ClassVar[EnsembleFamily]

    def __init__(self, ensemble: EnsembleSpec) -> None:
        if ensemble.family != self.family:
            raise ValueError(f"{type(self).__name__} cannot evaluate {ensemble.family.value}")
        self.ensemble = ensemble
        self.n = ensemble.N

    @property
    def geometry(self) -> GeometryModel:
        """Background metric of the family."""
        return self.ensemble.geometry

    def check_chart(self, *points: Any) -> None:
        """Raise if a point lies outside the chart of the ensemble."""

    @abstractmethod
    def log_weights(self, n_terms: Optional[int] = None) -> np.ndarray:
        """½·log of the squared norms of the monomial basis, indices 0..n_terms−1."""

    @abstractmethod
    def log_diagonal(self, z: Any) -> np.ndarray:
        """log Π_N(z, z) in closed form, ensemble constant included."""

    @abstractmethod
    def lambda_(self, z: Any, w: Any) -> np.ndarray:
        """Λ_N(z, w) = −log P_N(z, w) ≥ 0."""

    @abstractmethod
    def first_derivatives(self, z: Any, w: Any) -> tuple[np.ndarray, np.ndarray]:
        """(∂Λ/∂z̄, ∂Λ/∂w̄)."""

    @abstractmethod
    def mixed_derivative(self, z: Any, w: Any) -> np.ndarray:
        """∂²Λ/∂z̄∂w."""

    @abstractmethod
    def distance(self, z: Any, w: Any) -> np.ndarray:
        """Geodesic distance of the model metric."""

    @abstractmethod
    def correlation_radius(self, z: Any, level: float) -> np.ndarray:
        """Chart radius about z beyond which Λ_N exceeds ``level`` (may be infinite)."""

    def normalized_kernel(self, z: Any, w: Any) -> np.ndarray:
        """P_N(z, w) ∈ [0, 1]."""
        self.check_chart(z, w)
        return np.exp(-self.lambda_(z, w))

    def lambda_and_derivatives(self, z: Any, w: Any) -> LambdaDerivatives:
        """Λ_N and its Wirtinger derivatives.

        ∂²Λ/∂z̄∂w̄ vanishes identically for the model kernels, since log Π_N(z, w) is
        holomorphic in z and antiholomorphic in w. On the diagonal the first
        derivatives are zero and the entries are flagged.
        """
        self.check_chart(z, w)
        z, w = np.broadcast_arrays(as_complex(z), as_complex(w))
        dz, dw = self.first_derivatives(z, w)
        return LambdaDerivatives(
            value=self.lambda_(z, w),
            dzbar=dz,
            dwbar=dw,
            dzbar_dwbar=np.zeros(z.shape, dtype=complex),
            dzbar_dw=self.mixed_derivative(z, w),
            on_diagonal=z == w,
        )

    def log_basis_diagonal(self, z: Any, n_terms: Optional[int] = None) -> np.ndarray:
        """log Σ_j e^{2ℓ_j}|z|^{2j} by explicit summation of the basis."""
        weights = 2.0 * self.log_weights(n_terms)
        j = np.arange(len(weights))
        with np.errstate(divide="ignore", invalid="ignore"):
            log_r2 = np.log(np.abs(as_complex(z)) ** 2)
            exponent = weights + np.where(j == 0, 0.0, j * log_r2[..., None])
        return logsumexp(exponent, axis=-1)

    def basis_kernel(self, z: Any, w: Any, n_terms: Optional[int] = None) -> np.ndarray:
        """P_N(z, w) from |Σ_j e^{2ℓ_j}(z w̄)^j| over the explicit orthonormal basis."""
        z, w = np.broadcast_arrays(as_complex(z), as_complex(w))
        weights = 2.0 * self.log_weights(n_terms)
        j = np.arange(len(weights))
        x = z * np.conj(w)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_x = np.log(np.abs(x))
            re = weights + np.where(j == 0, 0.0, j * log_x[..., None])
        im = j * np.angle(x)[..., None]
        shift = np.max(re, axis=-1, keepdims=True)
        total = np.sum(np.exp(re - shift + 1j * im), axis=-1)
        log_cross = shift[..., 0] + np.log(np.abs(total))
        return np.exp(
            log_cross - 0.5 * self.log_basis_diagonal(z, n_terms)
            - 0.5 * self.log_basis_diagonal(w, n_terms)
        )

    def expected_density(self, z: Any, h: float = 1e-3) -> np.ndarray:
        """Expected zero density (1/π)∂∂̄ log Π_N(z, z) per unit chart area.

        Uses a five-point Laplacian of the truncated basis sum, so truncation
        effects show up here. For the model ensembles it equals N·ρ(z)/π.
        """
        z = as_complex(z)
        f = self.log_basis_diagonal
        lap = (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4.0 * f(z)) / h**2
        return lap / (4.0 * math.pi)
