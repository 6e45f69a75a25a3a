"""Variance bipotential Q_N = G̃(P_N) and the exact finite-N variance integrals."""

import logging
import math
from collections.abc import Callable
from functools import lru_cache
from typing import Any, Optional

import numpy as np
from scipy import integrate
from scipy.special import spence

from ..ensembles import EnsembleRegistry, KernelEvaluator, LambdaDerivatives, trial_generator
from ..errors import ChartDomainError, ConfigError, QuadratureError
from ..models import (
    BoundaryQuadrature,
    DiagonalMode,
    Domain,
    EnsembleFamily,
    EnsembleSpec,
    PairLogMoment,
    QuadratureResult,
    RefinementRow,
    SmoothQuadrature,
    TestFunction,
)
from .geometry import boundary_components, boundary_nodes, chart_perimeter, node_allocation
from .moments import MomentAccumulator
from .special import dilog

logger = logging.getLogger(__name__)

# Pairs with P_N below 1e-14 contribute nothing.
FAR_LEVEL = -math.log(1e-14)
LOG_MOMENT_CONSTANT = float(np.euler_gamma) ** 2 / 4.0
PAIR_LOG_CHUNK = 1_000_000
ROW_BLOCK = 256
SMOOTH_BLOCK = 50_000
BAND_ORDER = 8
BAND_GRADING = 6
ABSOLUTE_FLOOR = 1e-12

Kernel = Callable[[np.ndarray], np.ndarray]


def g_tilde(t: Any) -> np.ndarray:
    """G̃(t) = Li₂(t²)/(4π²) on [0, 1]; G̃(1) = 1/24.

    Raises:
        ChartDomainError: t outside [0, 1].
    """
    t = np.asarray(t, dtype=float)
    if np.any((t < 0.0) | (t > 1.0)):
        raise ChartDomainError("G̃ is defined on [0, 1]")
    return dilog(t**2) / (4.0 * math.pi**2)


def g_tilde_integral(t: float) -> float:
    """G̃(t) from its defining integral −(1/4π²)∫₀^{t²} log(1−s)/s ds by adaptive quadrature."""
    if not 0.0 <= t <= 1.0:
        raise ChartDomainError("G̃ is defined on [0, 1]")
    if t == 0.0:
        return 0.0
    value, _ = integrate.quad(
        lambda s: -math.log1p(-s) / s if s > 0 else 1.0, 0.0, t * t, epsabs=1e-15, epsrel=1e-13
    )
    return value / (4.0 * math.pi**2)


def f_value(lam: Any) -> np.ndarray:
    """F(λ) = G̃(e^{−λ}), vectorized through scipy's Spence function."""
    lam = np.asarray(lam, dtype=float)
    return spence(-np.expm1(-2.0 * lam)) / (4.0 * math.pi**2)


def f_prime(lam: Any) -> np.ndarray:
    """F′(λ) = (1/2π²)·log(1 − e^{−2λ}) ≤ 0."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(-2.0 * lam)) / (2.0 * math.pi**2)


def f_double_prime(lam: Any) -> np.ndarray:
    """F″(λ) = 1/(π²(e^{2λ} − 1)) > 0."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        return 1.0 / (math.pi**2 * np.expm1(2.0 * lam))


def q_n(ensemble: EnsembleSpec, z: Any, w: Any) -> np.ndarray:
    """Q_N(z, w) = G̃(P_N(z, w)) ∈ [0, 1/24]."""
    evaluator = EnsembleRegistry.get(ensemble)
    evaluator.check_chart(z, w)
    return f_value(evaluator.lambda_(z, w))


def _chain_rule(d: LambdaDerivatives) -> np.ndarray:
    with np.errstate(invalid="ignore"):
        second = f_double_prime(d.value) * d.dzbar * d.dwbar
        # Λ_z̄w̄ vanishes for the model kernels; skip it to keep F′(0) = −∞ out.
        mixed = np.where(d.dzbar_dwbar == 0, 0.0, f_prime(d.value) * d.dzbar_dwbar)
    return np.where(d.on_diagonal, np.nan, second + mixed)


def q_dzbar_dwbar(ensemble: EnsembleSpec, z: Any, w: Any) -> np.ndarray:
    """∂²Q_N/∂z̄∂w̄ = F″(Λ)·Λ_z̄Λ_w̄ + F′(Λ)·Λ_z̄w̄.

    The limit at z = w depends on the direction of approach, so the diagonal
    is returned as NaN.
    """
    return _chain_rule(EnsembleRegistry.get(ensemble).lambda_and_derivatives(z, w))


def _count_integrand(evaluator: KernelEvaluator, z: np.ndarray, w: np.ndarray) -> np.ndarray:
    z, w = np.broadcast_arrays(z, w)
    out = np.zeros(z.shape, dtype=complex)
    near = evaluator.lambda_(z, w) <= FAR_LEVEL
    if np.any(near):
        out[near] = _chain_rule(evaluator.lambda_and_derivatives(z[near], w[near]))
    return np.nan_to_num(out)


def default_boundary_nodes(ensemble: EnsembleSpec, domain: Domain) -> int:
    """max(256, 16⌈√N⌉·chart perimeter), resolving the 1/√N diagonal feature."""
    perimeter = chart_perimeter(domain)
    return max(256, math.ceil(16 * math.ceil(math.sqrt(ensemble.N)) * perimeter))


def _offset_sum(evaluator: KernelEvaluator, domain: Domain, n: int) -> complex:
    outer = boundary_nodes(domain, n, offset=False)
    inner = boundary_nodes(domain, n, offset=True)
    a = outer.dzbar_ds * outer.weight
    b = inner.dzbar_ds * inner.weight
    total = 0j
    for start in range(0, len(a), ROW_BLOCK):
        rows = slice(start, start + ROW_BLOCK)
        block = _count_integrand(evaluator, outer.z[rows, None], inner.z[None, :])
        total += complex(np.sum(block * a[rows, None] * b[None, :]))
    return -total


@lru_cache(maxsize=8)
def _band_rule(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule on [−1, 1] with panels graded geometrically toward 0."""
    x, w = np.polynomial.legendre.leggauss(BAND_ORDER)
    edges = np.concatenate([[0.0], 2.0 ** -np.arange(BAND_GRADING, -1, -1)])
    pieces = [np.linspace(lo, hi, 2**level + 1) for lo, hi in zip(edges[:-1], edges[1:])]
    edges = np.unique(np.concatenate(pieces))
    lo, hi = edges[:-1, None], edges[1:, None]
    u = (lo + 0.5 * (hi - lo) * (x + 1.0)).ravel()
    wu = (0.5 * (hi - lo) * w).ravel()
    return np.concatenate([-u[::-1], u]), np.concatenate([wu[::-1], wu])


def _refined_sum(
    evaluator: KernelEvaluator, domain: Domain, n: int, band: float, level: int
) -> complex:
    rules = []
    for curve, k in node_allocation(domain, n):
        s, weight = curve.node_params(k)
        z, tangent = curve.point(s)
        rules.append((curve, s, z, np.conj(tangent) * weight))
    all_z = np.concatenate([r[2] for r in rules])
    all_a = np.concatenate([r[3] for r in rules])
    owner = np.concatenate([np.full(len(r[1]), i) for i, r in enumerate(rules)])
    all_s = np.concatenate([r[1] for r in rules])
    u, wu = _band_rule(level)
    total = 0j
    for index, (curve, s, z, a) in enumerate(rules):
        rho = evaluator.geometry.density(z)
        half = np.minimum(band / np.sqrt(evaluator.n * rho), 0.5 * curve.length)
        for start in range(0, len(s), ROW_BLOCK):
            rows = slice(start, start + ROW_BLOCK)
            h = half[rows, None]
            gap = np.abs(all_s[None, :] - s[rows, None])
            gap = np.minimum(gap, curve.length - gap)
            in_band = (owner[None, :] == index) & ((gap < h) | (h >= 0.5 * curve.length))
            block = _count_integrand(evaluator, z[rows, None], all_z[None, :])
            weighted = block * a[rows, None] * all_a[None, :]
            total += complex(np.sum(np.where(in_band, 0.0, weighted)))
            zb, tb = curve.point(s[rows, None] + h * u[None, :])
            block = _count_integrand(evaluator, z[rows, None], zb)
            total += complex(np.sum(block * a[rows, None] * np.conj(tb) * h * wu[None, :]))
    return -total


def _check_geometry(ensemble: EnsembleSpec, domain: Domain) -> None:
    if domain.geometry.kind != ensemble.geometry.kind:
        raise ConfigError(
            f"domain geometry {domain.geometry.kind.value} does not match "
            f"{ensemble.family.value} ({ensemble.geometry.kind.value})"
        )


def _settle(
    name: str,
    table: list[RefinementRow],
    imaginary: float,
    tolerance: float,
    imag_tolerance: Optional[float] = None,
) -> QuadratureResult:
    value = table[-1].value
    error = table[-1].delta if len(table) > 1 else 0.0
    rows = [(row.n, row.value, row.delta) for row in table]
    if imag_tolerance is not None and abs(imaginary) > imag_tolerance * abs(value) + error:
        raise QuadratureError(
            f"{name}: imaginary part {imaginary:.3e} exceeds tolerance for value {value:.6e}",
            table=rows,
        )
    if error > tolerance * abs(value) and error > ABSOLUTE_FLOOR:
        raise QuadratureError(
            f"{name}: refinement changed the value by {error:.3e} (value {value:.6e})",
            table=rows,
        )
    if value < -(error + ABSOLUTE_FLOOR):
        raise QuadratureError(f"{name}: negative variance {value:.6e}", table=rows)
    return QuadratureResult(
        value=max(value, 0.0), error_estimate=error, imaginary_part=imaginary, table=table
    )


def variance_count(
    ensemble: EnsembleSpec, domain: Domain, quad: Optional[BoundaryQuadrature] = None
) -> QuadratureResult:
    """Exact Var(#zeros in U) = −Re ∮∮ ∂²Q_N/∂z̄∂w̄ · z̄′(s) w̄′(t) ds dt.

    OffsetGrids pairs a node set with its half-spacing shift so the diagonal is
    never sampled. LocalRefinement integrates a band of half-width
    band/√(Nρ) around every outer node with graded Gauss panels and the rest
    with the regular nodes. Each level doubles the node count; the last
    difference is the error estimate.

    Args:
        ensemble: Model ensemble.
        domain: Region under the ensemble's geometry.
        quad: Quadrature settings.

    Returns:
        Value, error estimate, imaginary residual and the refinement table.

    Raises:
        ConfigError: Domain geometry differs from the ensemble's.
        QuadratureError: Refinement does not settle, the imaginary residual is
            too large, or the value is negative beyond the error estimate.
    """
    quad = quad or BoundaryQuadrature()
    _check_geometry(ensemble, domain)
    if not boundary_components(domain):
        return QuadratureResult(value=0.0, error_estimate=0.0)
    evaluator = EnsembleRegistry.get(ensemble)
    n0 = quad.n or default_boundary_nodes(ensemble, domain)
    table: list[RefinementRow] = []
    previous: Optional[float] = None
    raw = 0j
    for level in range(quad.levels + 1):
        n = n0 * 2**level
        if quad.mode == DiagonalMode.OFFSET_GRIDS:
            raw = _offset_sum(evaluator, domain, n)
        else:
            raw = _refined_sum(evaluator, domain, n, quad.band, level)
        delta = abs(raw.real - previous) if previous is not None else 0.0
        table.append(RefinementRow(n=n, value=raw.real, delta=delta))
        logger.debug("variance_count n=%d value=%.10g delta=%.3e", n, raw.real, delta)
        previous = raw.real
    return _settle("variance_count", table, raw.imag, quad.tolerance, quad.imag_tolerance)


def _check_support(ensemble: EnsembleSpec, test_function: TestFunction) -> None:
    if ensemble.family == EnsembleFamily.SU11 and (
        abs(test_function.center_z) + test_function.support_radius >= 1.0
    ):
        raise ChartDomainError("test function support must lie inside the unit disk")


def _smooth_sum(
    evaluator: KernelEvaluator,
    test_function: TestFunction,
    kernel: Kernel,
    n_outer: int,
    n_radial: int,
    n_angular: int,
) -> float:
    a, support = test_function.center_z, test_function.support_radius
    x, wx = np.polynomial.legendre.leggauss(n_outer)
    xs = a.real + support * x
    ys = a.imag + support * x
    z = (xs[:, None] + 1j * ys[None, :]).ravel()
    wz = ((support * wx)[:, None] * (support * wx)[None, :]).ravel()
    outer = wz * test_function.laplacian(z)
    if evaluator.ensemble.family == EnsembleFamily.SU11:
        keep = np.abs(z) < 1.0
        z, outer = z[keep], outer[keep]
    r_max = np.minimum(evaluator.correlation_radius(z, FAR_LEVEL), np.abs(z - a) + support)
    xr, wr = np.polynomial.legendre.leggauss(n_radial)
    phase = np.exp(2j * math.pi * np.arange(n_angular) / n_angular)
    chunk = max(1, SMOOTH_BLOCK // (n_radial * n_angular))
    total = 0.0
    for start in range(0, len(z), chunk):
        zc, rc = z[start : start + chunk], r_max[start : start + chunk]
        r = 0.5 * rc[:, None] * (xr + 1.0)[None, :]
        weight = 0.5 * rc[:, None] * wr[None, :] * r * (2.0 * math.pi / n_angular)
        w = zc[:, None, None] + r[:, :, None] * phase[None, None, :]
        lam = evaluator.lambda_(zc[:, None, None], w)
        near = lam <= FAR_LEVEL
        if evaluator.ensemble.family == EnsembleFamily.SU11:
            near &= np.abs(w) < 1.0
        values = np.zeros(w.shape)
        values[near] = kernel(lam[near]) * test_function.laplacian(w[near])
        inner = np.sum(values, axis=2) * weight
        total += float(np.sum(outer[start : start + chunk] * np.sum(inner, axis=1)))
    return 0.25 * total


def kernel_double_integral(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    kernel: Kernel,
    quad: Optional[SmoothQuadrature] = None,
    name: str = "kernel_double_integral",
) -> QuadratureResult:
    """¼∫∫ K(Λ_N(z, w)) Δφ(z) Δφ(w) dA(z) dA(w), i.e. ∫∫ K·(i∂∂̄φ)(z)(i∂∂̄φ)(w).

    The outer factor is a Gauss tensor rule on the box a ± 6σ. The inner factor
    is polar about z: Gauss in the radius out to where Λ_N passes the far level
    (or the support is left), trapezoid in the angle.

    Raises:
        ChartDomainError: Support leaves the SU(1,1) disk.
        QuadratureError: Refinement does not settle.
    """
    quad = quad or SmoothQuadrature()
    _check_support(ensemble, test_function)
    evaluator = EnsembleRegistry.get(ensemble)
    table: list[RefinementRow] = []
    previous: Optional[float] = None
    for level in range(quad.levels + 1):
        scale = 2**level
        value = _smooth_sum(
            evaluator,
            test_function,
            kernel,
            quad.n_outer * scale,
            quad.n_radial * scale,
            quad.n_angular * scale,
        )
        delta = abs(value - previous) if previous is not None else 0.0
        table.append(RefinementRow(n=quad.n_outer * scale, value=value, delta=delta))
        logger.debug("%s n_outer=%d value=%.10g delta=%.3e", name, table[-1].n, value, delta)
        previous = value
    return _settle(name, table, 0.0, quad.tolerance)


def variance_smooth(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    quad: Optional[SmoothQuadrature] = None,
) -> QuadratureResult:
    """Exact Var(Z_s, φ) = ∫∫ Q_N (i∂∂̄φ)(z)(i∂∂̄φ)(w).

    Raises:
        ChartDomainError: Support leaves the SU(1,1) disk.
        QuadratureError: Refinement does not settle or the value is negative.
    """
    if test_function.is_zero:
        return QuadratureResult(value=0.0, error_estimate=0.0)
    return kernel_double_integral(ensemble, test_function, f_value, quad, name="variance_smooth")


def bargmann_fock_bump_variance(
    n: int, sigma: float, amplitude: float = 1.0, terms: int = 1_000_000
) -> float:
    """Exact Var(Z_s, φ) under Bargmann–Fock for φ = A·exp(−|z−a|²/σ²).

    Fourier series A²/(4Nσ²)·Σ k^{−3}(1 + 1/(2kNσ²))^{−3}; tends to
    ζ(3)A²/(4Nσ²) as N grows.
    """
    k = np.arange(1, terms + 1, dtype=float)
    c = 1.0 / (2.0 * n * sigma**2)
    series = float(np.sum((1.0 / k**3) / (1.0 + c / k) ** 3))
    return amplitude**2 / (4.0 * n * sigma**2) * series


def log_moment_constant() -> float:
    """k₀ = ((1/π)∫ log|c| e^{−|c|²} dA(c))² by radial quadrature; equals γ²/4."""
    mean, _ = integrate.quad(
        lambda r: math.log(r) * math.exp(-r * r) * 2.0 * r if r > 0 else 0.0,
        0.0,
        np.inf,
        epsabs=1e-14,
        epsrel=1e-13,
    )
    return mean**2


def pair_log_moment(
    t: float, n_draws: int, seed: int = 0, swap: bool = False
) -> PairLogMoment:
    """Monte Carlo E[log|c₁|·log|c₁t + c₂√(1−t²)|] for i.i.d. standard complex c₁, c₂.

    Draws are generated in blocks of 10⁶ from the counter-based stream, block
    index as counter. With ``swap`` the roles of c₁ and c₂ are exchanged.

    Raises:
        ChartDomainError: t outside [0, 1).
    """
    if not 0.0 <= t < 1.0:
        raise ChartDomainError("pair log moment needs 0 <= t < 1")
    accumulator = MomentAccumulator()
    for block, start in enumerate(range(0, n_draws, PAIR_LOG_CHUNK)):
        size = min(PAIR_LOG_CHUNK, n_draws - start)
        normals = trial_generator(seed, block).standard_normal((size, 4)) / math.sqrt(2.0)
        c1 = normals[:, 0] + 1j * normals[:, 1]
        c2 = normals[:, 2] + 1j * normals[:, 3]
        if swap:
            c1, c2 = c2, c1
        paired = t * c1 + math.sqrt(1.0 - t * t) * c2
        accumulator = accumulator.add(np.log(np.abs(c1)) * np.log(np.abs(paired)))
    summary = accumulator.summary()
    return PairLogMoment(
        t=t,
        n_draws=summary.n_trials,
        estimate=summary.mean,
        stderr=summary.stderr_mean,
        expected=LOG_MOMENT_CONSTANT + math.pi**2 * float(g_tilde(t)),
    )
