"""SU(1,1) ensemble: Gaussian series on the unit disk with the hyperbolic metric."""

from typing import Any, Optional

import numpy as np
from scipy.special import gammaln

from ..errors import ChartDomainError
from ..models import EnsembleFamily
from .base import KernelEvaluator, as_complex


class SU11Kernel(KernelEvaluator):
    """Π_N(z, w) = (1 − z w̄)^{−N} with basis √C(N+n−1, n) z^n.

    The exponent is the one obtained by summing the basis.
    """

    family = EnsembleFamily.SU11

    def check_chart(self, *points: Any) -> None:
        for p in points:
            if np.any(np.abs(as_complex(p)) >= 1.0):
                raise ChartDomainError("SU(1,1) points must satisfy |z| < 1")

    def log_weights(self, n_terms: Optional[int] = None) -> np.ndarray:
        n = self.n
        j = np.arange(n_terms or self.ensemble.dimension)
        return 0.5 * (gammaln(n + j) - gammaln(j + 1) - gammaln(n))

    def log_diagonal(self, z: Any) -> np.ndarray:
        return -self.n * np.log1p(-np.abs(as_complex(z)) ** 2)

    def lambda_(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        # 1 − sech²d with |1−z̄w|² − (1−|z|²)(1−|w|²) = |z−w|².
        tanh2 = np.abs(z - w) ** 2 / np.abs(1.0 - np.conj(z) * w) ** 2
        with np.errstate(divide="ignore"):
            return -0.5 * self.n * np.log1p(-np.minimum(tanh2, 1.0))

    def first_derivatives(self, z: Any, w: Any) -> tuple[np.ndarray, np.ndarray]:
        z, w = as_complex(z), as_complex(w)
        half = 0.5 * self.n
        dz = half * (z - w) / ((1.0 - np.abs(z) ** 2) * (1.0 - np.conj(z) * w))
        dw = half * (w - z) / ((1.0 - np.abs(w) ** 2) * (1.0 - z * np.conj(w)))
        return dz, dw

    def mixed_derivative(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        return -0.5 * self.n / (1.0 - np.conj(z) * w) ** 2

    def distance(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        return np.arctanh(np.abs(z - w) / np.abs(1.0 - np.conj(z) * w))

    def correlation_radius(self, z: Any, level: float) -> np.ndarray:
        r = np.abs(as_complex(z))
        t = np.sqrt(-np.expm1(-2.0 * level / self.n))
        return t * (1.0 - r**2) / (1.0 - t * r)
