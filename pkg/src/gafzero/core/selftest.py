"""Oracle suite run by ``gafzero selftest``."""

import logging
import math
from collections.abc import Callable

import numpy as np
from scipy import special

from ..ensembles import EnsembleRegistry
from ..errors import GafZeroError
from ..models import (
    BoundaryQuadrature,
    Domain,
    EnsembleFamily,
    EnsembleSpec,
    OracleCheck,
    SelfTestResult,
    SmoothQuadrature,
    TestFunction,
)
from .bipotential import (
    LOG_MOMENT_CONSTANT,
    bargmann_fock_bump_variance,
    g_tilde,
    g_tilde_integral,
    log_moment_constant,
    pair_log_moment,
    variance_count,
    variance_smooth,
)
from .montecarlo import run_count_experiment
from .predictions import (
    kappa_constant,
    kappa_constant_integral,
    nu_constant,
    nu_constant_integral,
)
from .special import zeta, zeta_eta

logger = logging.getLogger(__name__)

KERNEL_POINTS = np.array([0.0, 0.3 + 0.1j, -0.5 + 0.4j, 0.1 - 0.7j])
PAIR_LOG_T = (0.0, 0.5)


def _close(name: str, observed: float, expected: float, tolerance: float) -> OracleCheck:
    return OracleCheck(
        name=name,
        passed=abs(observed - expected) <= tolerance,
        observed=observed,
        expected=expected,
        tolerance=tolerance,
    )


def _relative(name: str, observed: float, expected: float, tolerance: float) -> OracleCheck:
    return _close(name, observed, expected, tolerance * abs(expected))


def kernel_checks() -> list[OracleCheck]:
    """Closed-form P_N and expected density against explicit basis sums, N ≤ 12."""
    checks = []
    for family in EnsembleFamily:
        ensemble = EnsembleSpec(family=family, N=12)
        evaluator = EnsembleRegistry.get(ensemble)
        z, w = np.meshgrid(KERNEL_POINTS, KERNEL_POINTS)
        closed = evaluator.normalized_kernel(z, w)
        basis = evaluator.basis_kernel(z, w)
        error = float(np.max(np.abs(basis - closed)))
        checks.append(_close(f"basis_kernel[{family.value}]", error, 0.0, 1e-10))
        density = evaluator.expected_density(KERNEL_POINTS)
        target = ensemble.N * ensemble.geometry.density(KERNEL_POINTS) / math.pi
        checks.append(
            _close(
                f"expected_density[{family.value}]",
                float(np.max(np.abs(density / target - 1.0))),
                0.0,
                1e-4,
            )
        )
    return checks


def constant_checks() -> list[OracleCheck]:
    """Dual computations of ζ, G̃, k₀, ν_m and κ_m."""
    checks = [
        _close("zeta(3/2)", zeta(1.5), zeta_eta(1.5), 1e-12),
        _close("zeta(3)", zeta(3.0), zeta_eta(3.0), 1e-12),
        _close("zeta(3/2)[scipy]", zeta(1.5), float(special.zeta(1.5)), 1e-12),
        _close("g_tilde(1/2)", float(g_tilde(0.5)), g_tilde_integral(0.5), 1e-12),
        _close("log_moment_constant", log_moment_constant(), LOG_MOMENT_CONSTANT, 1e-10),
    ]
    for m in (1, 2, 3):
        checks.append(_relative(f"nu[{m}]", nu_constant(m), nu_constant_integral(m), 1e-8))
    for m in (1, 2):
        checks.append(
            _relative(f"kappa[{m}]", kappa_constant(m), kappa_constant_integral(m), 1e-8)
        )
    return checks


def pair_log_checks(n_draws: int, seed: int) -> list[OracleCheck]:
    """E[log|c₁| log|c₁t + c₂√(1−t²)|] = γ²/4 + π²G̃(t) within 4 standard errors."""
    checks = []
    for t in PAIR_LOG_T:
        result = pair_log_moment(t, n_draws, seed)
        checks.append(
            _close(f"pair_log_moment[{t}]", result.estimate, result.expected, 4.0 * result.stderr)
        )
    return checks


def monte_carlo_checks(n_trials: int, seed: int) -> list[OracleCheck]:
    """Count moments at small N against the exact mean and the boundary integral."""
    ensemble = EnsembleSpec(family=EnsembleFamily.SU2, N=8)
    domain = Domain.model_validate({"shape": "disk", "radius": 1.0, "geometry": "fs"})
    exact = variance_count(ensemble, domain, BoundaryQuadrature()).value
    summary = run_count_experiment(ensemble, domain, n_trials, seed)
    return [
        _close("count_mean[su2:8]", summary.mean, ensemble.N / 2, 4.0 * summary.stderr_mean),
        _close("count_variance[su2:8]", summary.variance, exact, 4.0 * summary.stderr_variance),
    ]


def smooth_checks() -> list[OracleCheck]:
    """Smooth-statistic quadrature against the Bargmann–Fock Fourier series."""
    ensemble = EnsembleSpec(family=EnsembleFamily.BARGMANN_FOCK, N=16)
    bump = TestFunction(sigma=0.5)
    value = variance_smooth(ensemble, bump, SmoothQuadrature()).value
    return [_relative("variance_smooth[bf:16]", value, bargmann_fock_bump_variance(16, 0.5), 5e-3)]


def run_selftest(n_draws: int = 200_000, n_trials: int = 4000, seed: int = 0) -> SelfTestResult:
    """Run every oracle group; a group that raises is recorded as a failed check.

    Args:
        n_draws: Draws per pair-log-moment check.
        n_trials: Monte Carlo trials for the count check.
        seed: Base seed.
    """
    groups: list[tuple[str, Callable[[], list[OracleCheck]]]] = [
        ("kernels", kernel_checks),
        ("constants", constant_checks),
        ("pair_log_moment", lambda: pair_log_checks(n_draws, seed)),
        ("smooth_quadrature", smooth_checks),
        ("monte_carlo", lambda: monte_carlo_checks(n_trials, seed)),
    ]
    checks: list[OracleCheck] = []
    warnings: list[str] = []
    performed: list[str] = []
    for name, group in groups:
        performed.append(name)
        try:
            checks.extend(group())
        except (GafZeroError, ArithmeticError, ValueError) as e:
            logger.warning("self-test group %s failed: %s", name, e)
            warnings.append(f"{name}: {e}")
            checks.append(
                OracleCheck(
                    name=name,
                    passed=False,
                    observed=math.nan,
                    expected=math.nan,
                    tolerance=0.0,
                    message=str(e),
                )
            )
    return SelfTestResult(
        valid=all(check.passed for check in checks),
        checks=checks,
        warnings=warnings,
        checks_performed=performed,
    )
