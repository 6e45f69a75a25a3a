"""Bargmann–Fock ensemble: Gaussian entire functions on the flat plane."""

import math
from typing import Any, Optional

import numpy as np
from scipy.special import gammaln

from ..models import EnsembleFamily
from .base import KernelEvaluator, as_complex


class BargmannFockKernel(KernelEvaluator):
    """Π_N(z, w) = (N/π) e^{N z w̄} with basis √(N/π)(√N z)^k/√k!."""

    family = EnsembleFamily.BARGMANN_FOCK

    def log_weights(self, n_terms: Optional[int] = None) -> np.ndarray:
        n = self.n
        k = np.arange(n_terms or self.ensemble.dimension)
        return 0.5 * math.log(n / math.pi) + 0.5 * k * math.log(n) - 0.5 * gammaln(k + 1)

    def log_diagonal(self, z: Any) -> np.ndarray:
        return math.log(self.n / math.pi) + self.n * np.abs(as_complex(z)) ** 2

    def lambda_(self, z: Any, w: Any) -> np.ndarray:
        return 0.5 * self.n * np.abs(as_complex(z) - as_complex(w)) ** 2

    def first_derivatives(self, z: Any, w: Any) -> tuple[np.ndarray, np.ndarray]:
        diff = as_complex(z) - as_complex(w)
        return 0.5 * self.n * diff, -0.5 * self.n * diff

    def mixed_derivative(self, z: Any, w: Any) -> np.ndarray:
        shape = np.broadcast_shapes(np.shape(z), np.shape(w))
        return np.full(shape, -0.5 * self.n, dtype=complex)

    def distance(self, z: Any, w: Any) -> np.ndarray:
        return np.abs(as_complex(z) - as_complex(w))

    def correlation_radius(self, z: Any, level: float) -> np.ndarray:
        return np.full(np.shape(z), math.sqrt(2.0 * level / self.n))
