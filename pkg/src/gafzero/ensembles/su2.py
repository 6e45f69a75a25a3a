"""SU(2) ensemble: binomial-weighted polynomials on the Fubini–Study sphere."""

from typing import Any, Optional

import numpy as np
from scipy.special import gammaln

from ..models import EnsembleFamily
from .base import KernelEvaluator, as_complex


class SU2Kernel(KernelEvaluator):
    """Π_N(z, w) = (1 + z w̄)^N with basis √C(N, j) z^j."""

    family = EnsembleFamily.SU2

    def log_weights(self, n_terms: Optional[int] = None) -> np.ndarray:
        n = self.n
        j = np.arange(min(n + 1, n_terms or n + 1))
        return 0.5 * (gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1))

    def log_diagonal(self, z: Any) -> np.ndarray:
        return self.n * np.log1p(np.abs(as_complex(z)) ** 2)

    def lambda_(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        # 1 − cos²d with the chordal identity (1+|z|²)(1+|w|²) − |1+z̄w|² = |z−w|².
        sin2 = np.abs(z - w) ** 2 / ((1.0 + np.abs(z) ** 2) * (1.0 + np.abs(w) ** 2))
        with np.errstate(divide="ignore"):
            return -0.5 * self.n * np.log1p(-np.minimum(sin2, 1.0))

    def first_derivatives(self, z: Any, w: Any) -> tuple[np.ndarray, np.ndarray]:
        z, w = as_complex(z), as_complex(w)
        half = 0.5 * self.n
        dz = half * (z - w) / ((1.0 + np.abs(z) ** 2) * (1.0 + np.conj(z) * w))
        dw = half * (w - z) / ((1.0 + np.abs(w) ** 2) * (1.0 + z * np.conj(w)))
        return dz, dw

    def mixed_derivative(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        return -0.5 * self.n / (1.0 + np.conj(z) * w) ** 2

    def distance(self, z: Any, w: Any) -> np.ndarray:
        z, w = as_complex(z), as_complex(w)
        return np.arctan2(np.abs(z - w), np.abs(1.0 + np.conj(z) * w))

    def correlation_radius(self, z: Any, level: float) -> np.ndarray:
        r = np.abs(as_complex(z))
        t = np.tan(np.arccos(np.exp(-level / self.n)))
        with np.errstate(divide="ignore"):
            return np.where(t * r < 1.0, t * (1.0 + r**2) / (1.0 - t * r), np.inf)
