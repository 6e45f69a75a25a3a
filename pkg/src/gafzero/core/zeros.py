"""Zeros of sampled sections: root finding, counts and linear statistics."""

import logging
import math
from typing import Optional

import numpy as np

from ..config import settings
from ..ensembles import evaluate, log_coefficients
from ..errors import ChartDomainError, ConfigError, NearBoundaryZeroError, RootFindingError
from ..models import (
    CountResult,
    Domain,
    EnsembleFamily,
    SectionSample,
    TestFunction,
    ZeroSet,
)
from .geometry import BoundaryCurve, boundary_components, classify_points, domain_scale

logger = logging.getLogger(__name__)

STEP_TOLERANCE = 1e-14
BACKWARD_TOLERANCE = 1e-13
PHASE_STEP_LIMIT = math.pi / 2
ROUNDING_GUARD = 0.1
MAX_CONTOUR_NODES = 1 << 17


def _newton_polygon_guesses(log_abs: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the upper convex hull of (j, log|b_j|)."""
    hull: list[int] = []
    for j in np.flatnonzero(np.isfinite(log_abs)):
        while len(hull) >= 2:
            j0, j1 = hull[-2], hull[-1]
            if (log_abs[j1] - log_abs[j0]) * (j - j0) <= (log_abs[j] - log_abs[j0]) * (j1 - j0):
                hull.pop()
            else:
                break
        hull.append(int(j))
    guesses = []
    for segment, (k0, k1) in enumerate(zip(hull[:-1], hull[1:])):
        m = k1 - k0
        radius = math.exp((log_abs[k0] - log_abs[k1]) / m)
        theta = 2.0 * math.pi * np.arange(m) / m + 0.4 + 1.3 * segment
        guesses.append(radius * np.exp(1j * theta))
    return np.concatenate(guesses) if guesses else np.zeros(0, dtype=complex)


def _horner(b: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """p(z), p'(z) and Σ|b_k||z|^k for ascending coefficients b."""
    p = np.full(z.shape, b[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    scale = np.full(z.shape, abs(b[-1]))
    r = np.abs(z)
    for coefficient in b[-2::-1]:
        dp = dp * z + p
        p = p * z + coefficient
        scale = scale * r + abs(coefficient)
    return p, dp, scale


def _newton_ratio(b: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Newton correction p/p' and relative backward error |p|/Σ|b_k||z|^k.

    Outside the unit circle the reversed polynomial q(u) = u^D p(1/u) is used,
    with p/p' = q·z/(D·q − u·q').
    """
    degree = len(b) - 1
    ratio = np.empty(z.shape, dtype=complex)
    backward = np.empty(z.shape)
    inner = np.abs(z) <= 1.0
    if np.any(inner):
        p, dp, s = _horner(b, z[inner])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[inner] = np.where(p == 0, 0.0, p / dp)
        backward[inner] = np.abs(p) / s
    outer = ~inner
    if np.any(outer):
        zo = z[outer]
        u = 1.0 / zo
        q, dq, s = _horner(b[::-1], u)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[outer] = np.where(q == 0, 0.0, q * zo / (degree * q - u * dq))
        backward[outer] = np.abs(q) / s
    return ratio, backward


def _aberth(
    b: np.ndarray, guesses: np.ndarray, max_iterations: int
) -> tuple[np.ndarray, np.ndarray, int]:
    z = guesses.copy()
    active = np.ones(len(z), dtype=bool)
    backward = np.full(len(z), np.inf)
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        idx = np.flatnonzero(active)
        ratio, backward[idx] = _newton_ratio(b, z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = np.inf
        repulsion = np.sum(1.0 / diff, axis=1)
        step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, ratio)
        z[idx] -= step
        done = (np.abs(step) <= STEP_TOLERANCE * np.maximum(np.abs(z[idx]), 1e-300)) | (
            backward[idx] <= BACKWARD_TOLERANCE
        )
        active[idx[done]] = False
        if not np.any(active):
            break
    _, backward = _newton_ratio(b, z)
    return z, backward, iteration


def find_zeros(
    sample: SectionSample,
    max_iterations: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> ZeroSet:
    """All chart zeros of the (truncated) polynomial by Aberth–Ehrlich iteration.

    Coefficients are shifted in log space before exponentiation, exact zeros at
    the origin are deflated, and vanishing top coefficients (zeros at ∞) are
    dropped. Starting points come from the Newton polygon of the coefficients.

    Args:
        sample: Section to solve.
        max_iterations: Iteration cap; defaults to settings.
        tolerance: Largest accepted relative backward error; defaults to settings.

    Returns:
        ZeroSet with the log backward error of every root.

    Raises:
        DegenerateSampleError: All coefficients vanish.
        RootFindingError: Some root misses the tolerance; carries the partial ZeroSet.
    """
    max_iterations = max_iterations or settings.aberth_max_iterations
    tolerance = tolerance or settings.aberth_tolerance
    log_abs, arg = log_coefficients(sample)
    nonzero = np.flatnonzero(np.isfinite(log_abs))
    low, high = int(nonzero[0]), int(nonzero[-1])
    at_origin = np.zeros(low, dtype=complex)
    if high == low:
        return ZeroSet(points=at_origin, residual_log_moduli=np.full(low, -np.inf))
    log_b = log_abs[low : high + 1]
    b = np.exp(log_b - np.max(log_b) + 1j * arg[low : high + 1])
    b[~np.isfinite(log_b)] = 0.0
    roots, backward, iterations = _aberth(b, _newton_polygon_guesses(log_b), max_iterations)
    with np.errstate(divide="ignore"):
        residuals = np.log(backward)
    zero_set = ZeroSet(
        points=np.concatenate([at_origin, roots]),
        residual_log_moduli=np.concatenate([np.full(low, -np.inf), residuals]),
        iterations=iterations,
        converged=bool(np.all(backward <= tolerance)),
    )
    if not zero_set.converged:
        worst = float(np.max(backward))
        raise RootFindingError(
            f"{int(np.sum(backward > tolerance))} of {len(roots)} roots above tolerance "
            f"after {iterations} iterations (worst backward error {worst:.2e})",
            partial=zero_set,
        )
    logger.debug("found %d zeros in %d iterations", len(roots) + low, iterations)
    return zero_set


def effective_degree(sample: SectionSample) -> int:
    """Number of chart zeros: index of the highest nonzero coefficient."""
    return int(np.flatnonzero(sample.coefficients != 0)[-1])


def count_in_domain(
    sample: SectionSample, domain: Domain, tol: Optional[float] = None
) -> CountResult:
    """Count zeros strictly inside U from the located roots.

    Args:
        sample: Section to solve.
        domain: Region; its geometry should match the ensemble.
        tol: Boundary band; defaults to settings.boundary_tolerance × domain radius.

    Returns:
        Count with a flag when any zero falls in the boundary band.

    Raises:
        ConfigError: The domain geometry differs from the ensemble geometry.
    """
    if domain.geometry.kind != sample.ensemble.geometry.kind:
        raise ConfigError(
            f"{domain.geometry.kind.value} domain does not match the "
            f"{sample.ensemble.geometry.kind.value} geometry of {sample.ensemble.label()}"
        )
    if tol is None:
        tol = settings.boundary_tolerance * domain_scale(domain)
    zeros = find_zeros(sample)
    code = classify_points(domain, zeros.points, tol)
    return CountResult(count=int(np.sum(code == 1)), boundary_flag=bool(np.any(code == 0)))


def _winding(sample: SectionSample, curve: BoundaryCurve, n: int) -> int:
    previous: Optional[int] = None
    while n <= MAX_CONTOUR_NODES:
        log_modulus, phase = evaluate(sample, curve.path(n))
        if np.any(np.isneginf(log_modulus)):
            raise NearBoundaryZeroError("section vanishes on the contour", residual=0.5)
        steps = np.angle(np.exp(1j * (np.roll(phase, -1) - phase)))
        if np.max(np.abs(steps)) <= PHASE_STEP_LIMIT:
            winding = float(np.sum(steps)) / (2.0 * math.pi)
            nearest = round(winding)
            residual = abs(winding - nearest)
            if residual > ROUNDING_GUARD:
                raise NearBoundaryZeroError(
                    f"winding number {winding:.3f} is not near an integer", residual=residual
                )
            if previous == nearest:
                return nearest
            previous = nearest
        n *= 2
    raise NearBoundaryZeroError(
        f"phase still unresolved with {MAX_CONTOUR_NODES} contour nodes", residual=0.5
    )


def count_by_argument_principle(sample: SectionSample, domain: Domain, n_nodes: int = 64) -> int:
    """Count zeros in U as the winding number of s along ∂U.

    Phase increments come from ``evaluate`` along each boundary curve, polygon
    corners included. Sampling doubles until no increment exceeds π/2 and two
    successive resolutions agree. For regions containing ∞ the chart zeros
    outside the reversed curve are recovered from the effective degree.

    Raises:
        NearBoundaryZeroError: The winding number cannot be resolved safely.
    """
    curves = boundary_components(domain)
    degree = effective_degree(sample)
    if not curves:
        return degree
    total = sum(_winding(sample, curve, n_nodes) for curve in curves)
    return total + (degree if domain.complement else 0)


def linear_statistic(sample: SectionSample, test_function: TestFunction) -> float:
    """Σ φ(z_i) over the chart zeros of the sample.

    Raises:
        ChartDomainError: The test function support leaves the SU(1,1) disk.
    """
    if test_function.is_zero:
        return 0.0
    if sample.ensemble.family == EnsembleFamily.SU11 and (
        abs(test_function.center_z) + test_function.support_radius >= 1.0
    ):
        raise ChartDomainError("test function support must lie inside the unit disk")
    zeros = find_zeros(sample)
    return float(np.sum(test_function.value(zeros.points)))

