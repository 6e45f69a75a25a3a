"""Leading-order predictions, universal constants and Szegő kernel scans."""

import logging
import math
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.special import gamma

from ..ensembles import EnsembleRegistry
from ..errors import ConfigError
from ..models import (
    DecayScan,
    Domain,
    EnsembleSpec,
    GeometryKind,
    GeometryModel,
    NormalityConditions,
    Prediction,
    ScalingResidual,
    ScalingScan,
    SmoothQuadrature,
    TestFunction,
    Theorem,
)
from .bipotential import FAR_LEVEL, g_tilde, kernel_double_integral
from .geometry import area, boundary_length
from .special import zeta, zeta_eta

logger = logging.getLogger(__name__)

__all__ = [
    "zeta",
    "zeta_eta",
    "nu_constant",
    "nu_constant_integral",
    "kappa_constant",
    "kappa_constant_integral",
    "predicted_number_variance",
    "predicted_volume_variance",
    "predicted_smooth_variance",
    "expected_count",
    "expected_count_prediction",
    "expected_linear_statistic",
    "scaling_residual",
    "scaling_residual_scan",
    "offdiagonal_decay_scan",
    "correlation_mass",
    "normality_conditions",
]

MASS_RADIAL_NODES = 128
MASS_ANGULAR_NODES = 64
UNBOUNDED_RADIUS = 1e3
PLANE_BASE_POINTS = [0j, 0.5 + 0.5j, -1.5 + 0j, 2j]
DISK_BASE_POINTS = [0j, 0.3 + 0.1j, -0.2j]
# e^{-r²} is below double precision past these radii.
NU_RADIAL_CUTOFF = 30.0
KAPPA_RADIAL_CUTOFF = 40.0


def nu_constant(m: int) -> float:
    """ν_m = π^{m−5/2} ζ(m+½) / 8; ν₁ ≈ 0.0586."""
    return math.pi ** (m - 2.5) * zeta(m + 0.5) / 8.0


def kappa_constant(m: int) -> float:
    """κ_m = π^{m−2} ζ(m+2) / 4."""
    return math.pi ** (m - 2) * zeta(m + 2.0) / 4.0


def _nu_radial(r: float, m: int) -> float:
    if r <= 0:
        return 0.0
    # r^{2m}/(e^{r²} − 1)
    return r ** (2 * m) * math.exp(-r * r) / -math.expm1(-r * r)


def nu_constant_integral(m: int) -> float:
    """ν_m from (1/4π²)∫_{ℝ^{2m−1}} x₁²/(e^{|x|²} − 1) dx in polar form."""
    d = 2 * m - 1
    sphere = 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)
    radial, _ = integrate.quad(
        _nu_radial,
        0.0,
        NU_RADIAL_CUTOFF,
        args=(m,),
        epsabs=0.0,
        epsrel=1e-12,
        limit=200,
    )
    return sphere * radial / (4.0 * math.pi**2 * d)


def kappa_constant_integral(m: int) -> float:
    """κ_m from ∫_{ℂ^m} G̃(e^{−|v|²/2}) dv in polar form."""
    sphere = 2.0 * math.pi**m / gamma(m)
    radial, _ = integrate.quad(
        lambda r: float(g_tilde(math.exp(-0.5 * r * r))) * r ** (2 * m - 1),
        0.0,
        KAPPA_RADIAL_CUTOFF,
        epsabs=0.0,
        epsrel=1e-12,
        limit=200,
    )
    return sphere * radial


def predicted_number_variance(n: int, domain: Domain) -> Prediction:
    """√N · ν₁ · Length(∂U); zero for an empty boundary.

    Raises:
        InvalidDomainError: The domain fails validation.
    """
    return Prediction(
        theorem=Theorem.NUMBER_VARIANCE,
        N=n,
        m=1,
        constant=nu_constant(1),
        power=0.5,
        geometric_factor=boundary_length(domain),
    )


def predicted_volume_variance(n: int, m: int, boundary_volume: float) -> Prediction:
    """N^{3/2−m} · ν_m · Vol(∂U); m = 1 coincides with the number variance."""
    if m < 1 or boundary_volume < 0:
        raise ConfigError("need m >= 1 and a non-negative boundary volume")
    return Prediction(
        theorem=Theorem.VOLUME_VARIANCE,
        N=n,
        m=m,
        constant=nu_constant(m),
        power=1.5 - m,
        geometric_factor=boundary_volume,
    )


def predicted_smooth_variance(
    n: int, m: int, test_function: TestFunction, geometry: Optional[GeometryModel] = None
) -> Prediction:
    """N^{−m} · κ_m · ‖∂∂̄φ‖²; for m = 1 also N^{−1}(ζ(3)/16π)‖Δφ‖² as the alternate form.

    Args:
        n: Degree N.
        m: Complex dimension.
        test_function: The bump φ.
        geometry: Metric for the norms; Euclidean when omitted.
    """
    if m < 1:
        raise ConfigError("need m >= 1")
    alternate = None
    if m == 1:
        alternate = zeta(3.0) / (16.0 * math.pi) * test_function.laplacian_norm_sq(geometry) / n
    return Prediction(
        theorem=Theorem.SMOOTH_VARIANCE,
        N=n,
        m=m,
        constant=kappa_constant(m),
        power=-float(m),
        geometric_factor=test_function.dbar_norm_sq(geometry),
        alternate_value=alternate,
    )


def _check_geometry(ensemble: EnsembleSpec, domain: Domain) -> None:
    if domain.geometry.kind != ensemble.geometry.kind:
        raise ConfigError(
            f"domain geometry {domain.geometry.kind.value} does not match {ensemble.family.value}"
        )


def expected_count(ensemble: EnsembleSpec, domain: Domain) -> float:
    """E #zeros in U = N·Area_ω(U)/π; exact at finite N for the model ensembles."""
    _check_geometry(ensemble, domain)
    return ensemble.N * area(domain) / math.pi


def expected_count_prediction(ensemble: EnsembleSpec, domain: Domain) -> Prediction:
    """Expected count in Prediction form: (1/π) · N · Area_ω(U)."""
    _check_geometry(ensemble, domain)
    return Prediction(
        theorem=Theorem.EXPECTED_COUNT,
        N=ensemble.N,
        m=1,
        constant=1.0 / math.pi,
        power=1.0,
        geometric_factor=area(domain),
        remainder_exponent=0.0,
    )


def expected_linear_statistic(ensemble: EnsembleSpec, test_function: TestFunction) -> float:
    """E(Z_s, φ) = (N/π)∫φ ω."""
    return ensemble.N / math.pi * test_function.integral(ensemble.geometry)


def _normal_scale(ensemble: EnsembleSpec, z0: complex) -> float:
    rho = float(ensemble.geometry.density(z0))
    return 1.0 / math.sqrt(ensemble.N * rho)


def scaling_residual(
    ensemble: EnsembleSpec, u: complex, v: complex, z0: complex = 0j
) -> ScalingResidual:
    """R_N(u, v) = P_N(z₀ + u/√(Nρ), z₀ + v/√(Nρ))·e^{|u−v|²/2} − 1."""
    evaluator = EnsembleRegistry.get(ensemble)
    h = _normal_scale(ensemble, z0)
    lam = float(evaluator.lambda_(z0 + h * u, z0 + h * v))
    residual = math.expm1(0.5 * abs(u - v) ** 2 - lam)
    return ScalingResidual(z0=z0, u=u, v=v, N=ensemble.N, residual=residual)


def scaling_residual_scan(
    ensemble: EnsembleSpec, bound: float = 2.0, grid: int = 11, z0: complex = 0j
) -> ScalingScan:
    """max |R_N(u, v)| over grid points with |u|, |v| ≤ bound.

    Args:
        ensemble: Model ensemble.
        bound: Offset bound in normal coordinates.
        grid: Points per axis of the square grid the offsets are taken from.
        z0: Base point.
    """
    evaluator = EnsembleRegistry.get(ensemble)
    axis = np.linspace(-bound, bound, grid)
    offsets = (axis[:, None] + 1j * axis[None, :]).ravel()
    offsets = offsets[np.abs(offsets) <= bound + 1e-12]
    h = _normal_scale(ensemble, z0)
    u, v = offsets[:, None], offsets[None, :]
    lam = evaluator.lambda_(z0 + h * u, z0 + h * v)
    residual = np.expm1(0.5 * np.abs(u - v) ** 2 - lam)
    i, j = np.unravel_index(int(np.argmax(np.abs(residual))), residual.shape)
    logger.debug("scaling scan N=%d max=%.3e", ensemble.N, abs(residual[i, j]))
    return ScalingScan(
        N=ensemble.N,
        bound=bound,
        max_residual=float(np.abs(residual[i, j])),
        argmax=ScalingResidual(
            z0=z0,
            u=complex(offsets[i]),
            v=complex(offsets[j]),
            N=ensemble.N,
            residual=float(residual[i, j]),
        ),
    )


def _geodesic_offset(
    kind: GeometryKind, z: np.ndarray, d: np.ndarray, direction: np.ndarray
) -> np.ndarray:
    """Point at geodesic distance d from z, moved there from 0 by an isometry."""
    if kind == GeometryKind.FUBINI_STUDY:
        x = np.tan(d) * direction
        return (x + z) / (1.0 - np.conj(z) * x)
    if kind == GeometryKind.HYPERBOLIC:
        x = np.tanh(d) * direction
        return (x + z) / (1.0 + np.conj(z) * x)
    return z + d * direction


def offdiagonal_decay_scan(
    ensemble: EnsembleSpec,
    b: float,
    base_points: Optional[list[complex]] = None,
    n_directions: int = 16,
) -> DecayScan:
    """max P_N(z, w) over pairs at geodesic distance ≥ b√(log N / N).

    Pairs are placed exactly on geodesic circles of radius d₀, 1.25d₀, 1.5d₀, 2d₀
    and 3d₀ about each base point.

    Raises:
        ConfigError: N < 2.
    """
    n = ensemble.N
    if n < 2:
        raise ConfigError("decay scan needs N >= 2")
    threshold = b * math.sqrt(math.log(n) / n)
    evaluator = EnsembleRegistry.get(ensemble)
    kind = ensemble.geometry.kind
    if base_points is None:
        base_points = DISK_BASE_POINTS if kind == GeometryKind.HYPERBOLIC else PLANE_BASE_POINTS
    multiples = np.array([1.0, 1.25, 1.5, 2.0, 3.0])
    if kind == GeometryKind.FUBINI_STUDY:
        multiples = multiples[multiples * threshold < 0.5 * math.pi]
    z = np.asarray(base_points, dtype=complex)[:, None, None]
    d = (threshold * multiples)[None, :, None]
    direction = np.exp(2j * math.pi * np.arange(n_directions) / n_directions)[None, None, :]
    w = _geodesic_offset(kind, z, d, direction)
    kernel = evaluator.normalized_kernel(np.broadcast_to(z, w.shape), w)
    return DecayScan(
        N=n,
        b=b,
        threshold_distance=threshold,
        max_kernel=float(np.max(kernel)),
        reference=float(n) ** (-0.5 * b * b),
    )


def _mass_at(ensemble: EnsembleSpec, z: complex) -> float:
    evaluator = EnsembleRegistry.get(ensemble)
    r_max = float(evaluator.correlation_radius(z, FAR_LEVEL))
    if not math.isfinite(r_max):
        r_max = UNBOUNDED_RADIUS * (1.0 + abs(z))
    x, wx = np.polynomial.legendre.leggauss(MASS_RADIAL_NODES)
    r = 0.5 * r_max * (x + 1.0)
    weight = 0.5 * r_max * wx * r * (2.0 * math.pi / MASS_ANGULAR_NODES)
    phase = np.exp(2j * math.pi * np.arange(MASS_ANGULAR_NODES) / MASS_ANGULAR_NODES)
    w = z + r[:, None] * phase[None, :]
    if ensemble.geometry.kind == GeometryKind.HYPERBOLIC:
        inside = np.abs(w) < 1.0
        w = np.where(inside, w, 0.0)
    else:
        inside = np.ones(w.shape, dtype=bool)
    values = np.exp(-evaluator.lambda_(z, w)) * ensemble.geometry.density(w)
    return float(np.sum(np.where(inside, values, 0.0) * weight[:, None]))


def correlation_mass(ensemble: EnsembleSpec, base_points: Optional[list[complex]] = None) -> float:
    """sup_z ∫ P_N(z, w) ω(w) over the given base points (default: the origin).

    The model kernels are invariant under their isometry groups, so one base
    point already gives the supremum; about 2π/N for large N.
    """
    points = base_points or [0j]
    return max(_mass_at(ensemble, complex(z)) for z in points)


def normality_conditions(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    quad: Optional[SmoothQuadrature] = None,
) -> NormalityConditions:
    """Proxies for the two sufficient conditions of asymptotic normality.

    The ratio ∫∫P_N² (i∂∂̄φ)(i∂∂̄φ) / sup-mass should approach ½‖∂∂̄φ‖²,
    while the sup-mass itself decays like 1/N.

    Raises:
        ChartDomainError: Support leaves the SU(1,1) disk.
        QuadratureError: Refinement does not settle.
    """
    mass = correlation_mass(ensemble)
    squared = kernel_double_integral(
        ensemble,
        test_function,
        lambda lam: np.exp(-2.0 * lam),
        quad,
        name="normality_conditions",
    )
    return NormalityConditions(
        N=ensemble.N,
        correlation_mass=mass,
        ratio=squared.value / mass,
        limit=0.5 * test_function.dbar_norm_sq(ensemble.geometry),
    )
