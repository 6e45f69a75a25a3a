"""Reproducible, sharded Monte Carlo harness for zero statistics."""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from ..config import get_settings
from ..ensembles import sample
from ..errors import (
    ConfigError,
    DegenerateSampleError,
    DegenerateTrialsError,
    NearBoundaryZeroError,
    RootFindingError,
)
from ..models import (
    Domain,
    EnsembleFamily,
    EnsembleSpec,
    MomentSummary,
    NormalityReport,
    SmoothQuadrature,
    Standardization,
    StandardizationSource,
    SweepRow,
    TestFunction,
)
from .bipotential import variance_smooth
from .geometry import boundary_length, chart_radius, dilate, domain_scale, validate_domain
from .moments import MomentAccumulator
from .predictions import (
    expected_linear_statistic,
    predicted_number_variance,
    predicted_smooth_variance,
    predicted_volume_variance,
)
from .zeros import count_by_argument_principle, count_in_domain, linear_statistic

logger = logging.getLogger(__name__)

MIN_TRIALS = 100
MIN_NORMALITY_SAMPLES = 500
KS_LEVEL = 0.95


@dataclass(frozen=True)
class ShardTask:
    """Trial indices [start, stop) of one experiment."""

    ensemble: EnsembleSpec
    seed: int
    start: int
    stop: int
    domain: Optional[Domain] = None
    test_function: Optional[TestFunction] = None
    tol: Optional[float] = None


@dataclass(frozen=True)
class ShardResult:
    """Statistic values of the kept trials of a shard, in trial order."""

    values: np.ndarray
    n_degenerate: int


def run_shard(task: ShardTask) -> ShardResult:
    """Evaluate the statistic on every trial of a shard.

    Trials whose zeros sit in the boundary band are counted as degenerate and
    left out, as are sections whose coefficients all vanish.

    Raises:
        RootFindingError: The roots of a trial did not converge; the message
            names the trial.
    """
    values: list[float] = []
    degenerate = 0
    for trial_index in range(task.start, task.stop):
        s = sample(task.ensemble, task.seed, trial_index)
        try:
            if task.domain is not None:
                result = count_in_domain(s, task.domain, task.tol)
                if result.boundary_flag:
                    degenerate += 1
                    continue
                values.append(float(result.count))
            elif task.test_function is not None:
                values.append(linear_statistic(s, task.test_function))
        except DegenerateSampleError as e:
            logger.debug("trial %d degenerate: %s", trial_index, e)
            degenerate += 1
        except RootFindingError as e:
            raise RootFindingError(f"trial {trial_index}: {e}", partial=e.partial) from e
    return ShardResult(values=np.asarray(values, dtype=float), n_degenerate=degenerate)


def resolve_workers(workers: int) -> int:
    """Worker count after the GAFZERO_WORKERS override."""
    override = get_settings().workers
    return override if override is not None else max(1, workers)


def covering_ensemble(ensemble: EnsembleSpec, radius: float) -> EnsembleSpec:
    """Same ensemble with a truncation valid up to chart radius ``radius``.

    Raises:
        ConfigError: An explicit truncation is too small for the radius.
    """
    if ensemble.family == EnsembleFamily.SU2 or radius <= ensemble.bound:
        return ensemble
    try:
        return EnsembleSpec(
            family=ensemble.family,
            N=ensemble.N,
            truncation_degree=ensemble.truncation_degree,
            radius_bound=radius,
        )
    except ValueError as e:
        raise ConfigError(f"ensemble does not cover chart radius {radius:.4g}: {e}") from e


def experiment_ensemble(
    ensemble: EnsembleSpec,
    domain: Optional[Domain] = None,
    test_function: Optional[TestFunction] = None,
) -> EnsembleSpec:
    """Ensemble whose truncation covers the domain or the test-function support."""
    if domain is not None:
        radius = chart_radius(domain)
        return covering_ensemble(ensemble, radius) if math.isfinite(radius) else ensemble
    if test_function is not None:
        return covering_ensemble(
            ensemble, abs(test_function.center_z) + test_function.support_radius
        )
    return ensemble


def _shards(n_trials: int) -> list[tuple[int, int]]:
    size = get_settings().shard_size
    return [(start, min(start + size, n_trials)) for start in range(0, n_trials, size)]


def _run(tasks: list[ShardTask], workers: int) -> list[ShardResult]:
    workers = resolve_workers(workers)
    if workers == 1 or len(tasks) == 1:
        return [run_shard(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_shard, tasks))


def _collect(
    ensemble: EnsembleSpec,
    n_trials: int,
    seed: int,
    workers: int,
    domain: Optional[Domain] = None,
    test_function: Optional[TestFunction] = None,
    tol: Optional[float] = None,
) -> tuple[MomentAccumulator, int, np.ndarray]:
    if n_trials < MIN_TRIALS:
        raise ConfigError(f"need at least {MIN_TRIALS} trials, got {n_trials}")
    tasks = [
        ShardTask(ensemble, seed, start, stop, domain, test_function, tol)
        for start, stop in _shards(n_trials)
    ]
    logger.info(
        "running %d trials of %s in %d shards", n_trials, ensemble.label(), len(tasks)
    )
    results = _run(tasks, workers)
    accumulator = MomentAccumulator()
    degenerate = 0
    for shard in results:
        accumulator = accumulator.merge(MomentAccumulator.from_values(shard.values))
        degenerate += shard.n_degenerate
    limit = get_settings().degenerate_fraction
    if degenerate > limit * n_trials:
        raise DegenerateTrialsError(
            f"{degenerate} of {n_trials} trials degenerate (limit {limit:.1%}); "
            "check the boundary tolerance"
        )
    values = np.concatenate([shard.values for shard in results])
    return accumulator, degenerate, values


def run_count_experiment(
    ensemble: EnsembleSpec,
    domain: Domain,
    n_trials: int,
    seed: int,
    workers: int = 1,
    tol: Optional[float] = None,
) -> MomentSummary:
    """Moments of #zeros in U over n_trials independent sections.

    Trials are sharded by index; shards merge in index order, so the summary is
    bit-identical for any worker count.

    Args:
        ensemble: Model ensemble; series truncations are widened to cover U.
        domain: Region under the ensemble's geometry.
        n_trials: Number of trials (at least 100).
        seed: Base seed.
        workers: Worker processes; GAFZERO_WORKERS overrides.
        tol: Boundary band; defaults to settings.boundary_tolerance × domain radius.

    Raises:
        ConfigError: Too few trials or mismatched geometry.
        DegenerateTrialsError: More than 1% of trials flagged.
        RootFindingError: A trial's roots did not converge.
    """
    if domain.geometry.kind != ensemble.geometry.kind:
        raise ConfigError("domain geometry does not match the ensemble")
    validate_domain(domain)
    ensemble = experiment_ensemble(ensemble, domain=domain)
    if tol is None:
        tol = get_settings().boundary_tolerance * domain_scale(domain)
    accumulator, degenerate, _ = _collect(
        ensemble, n_trials, seed, workers, domain=domain, tol=tol
    )
    return accumulator.summary(degenerate)


def sample_linear_statistics(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    n_trials: int,
    seed: int,
    workers: int = 1,
) -> tuple[MomentSummary, np.ndarray]:
    """Moments and raw values of (Z_s, φ) over n_trials sections.

    Raises:
        ConfigError: Too few trials.
        DegenerateTrialsError: More than 1% of trials failed.
        RootFindingError: A trial's roots did not converge.
    """
    ensemble = experiment_ensemble(ensemble, test_function=test_function)
    accumulator, degenerate, values = _collect(
        ensemble, n_trials, seed, workers, test_function=test_function
    )
    return accumulator.summary(degenerate), values


def run_smooth_experiment(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    n_trials: int,
    seed: int,
    workers: int = 1,
) -> MomentSummary:
    """Moments of the linear statistic (Z_s, φ) = Σ φ(zeros)."""
    return sample_linear_statistics(ensemble, test_function, n_trials, seed, workers)[0]


def bipotential_standardization(
    ensemble: EnsembleSpec,
    test_function: TestFunction,
    quad: Optional[SmoothQuadrature] = None,
) -> Standardization:
    """Mean (N/π)∫φω and the exact standard deviation from the bipotential."""
    variance = variance_smooth(ensemble, test_function, quad).value
    if variance <= 0:
        raise DegenerateSampleError("bipotential variance is zero")
    return Standardization(
        source=StandardizationSource.BIPOTENTIAL,
        mean_used=expected_linear_statistic(ensemble, test_function),
        sd_used=math.sqrt(variance),
    )


def normality_test(
    samples: np.ndarray, standardization: Optional[Standardization] = None
) -> NormalityReport:
    """One-sample KS test of standardized samples against the standard normal law.

    Args:
        samples: At least 500 values.
        standardization: Moments to standardize with; the empirical mean and
            standard deviation when omitted.

    Returns:
        KS statistic, p-value and the asymptotic 5% critical value
        K₀.₉₅/√n of the Kolmogorov distribution.

    Raises:
        ConfigError: Fewer than 500 samples.
        DegenerateSampleError: Zero empirical variance.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < MIN_NORMALITY_SAMPLES:
        raise ConfigError(f"need at least {MIN_NORMALITY_SAMPLES} samples, got {x.size}")
    sd = float(np.std(x, ddof=1))
    if sd == 0.0:
        raise DegenerateSampleError("samples have zero empirical variance")
    if standardization is None:
        standardization = Standardization(
            source=StandardizationSource.EMPIRICAL, mean_used=float(np.mean(x)), sd_used=sd
        )
    z = (x - standardization.mean_used) / standardization.sd_used
    result = stats.kstest(z, "norm")
    return NormalityReport(
        n_samples=int(x.size),
        ks_statistic=float(result.statistic),
        p_value=float(result.pvalue),
        critical_value_5pct=float(stats.kstwobign.ppf(KS_LEVEL)) / math.sqrt(x.size),
        standardization=standardization,
    )


def variance_vs_n_sweep(
    family: EnsembleFamily,
    n_list: list[int],
    n_trials: int,
    seed: int,
    domain: Optional[Domain] = None,
    test_function: Optional[TestFunction] = None,
    workers: int = 1,
    dilate_domain: bool = False,
) -> list[SweepRow]:
    """Empirical variance against the leading-order prediction for each N.

    With ``dilate_domain`` the Bargmann–Fock ensemble at N = 1 is run on √N·U
    and compared with ν₁·Length(√N·∂U), the dilation form of the √N law.

    Raises:
        ConfigError: N_list not increasing, not exactly one of domain or
            test function, or dilation outside Bargmann–Fock.
    """
    if not n_list or list(n_list) != sorted(set(n_list)):
        raise ConfigError("N_list must be a non-empty increasing list")
    if (domain is None) == (test_function is None):
        raise ConfigError("sweep needs exactly one of domain or test_function")
    if dilate_domain and (family != EnsembleFamily.BARGMANN_FOCK or domain is None):
        raise ConfigError("dilated sweeps need the Bargmann–Fock ensemble and a domain")
    rows: list[SweepRow] = []
    for n in n_list:
        if domain is not None and dilate_domain:
            scaled = dilate(domain, math.sqrt(n))
            summary = run_count_experiment(
                EnsembleSpec(family=family, N=1), scaled, n_trials, seed, workers
            )
            prediction = predicted_volume_variance(1, 1, boundary_length(scaled)).leading_value
        elif domain is not None:
            ensemble = EnsembleSpec(family=family, N=n)
            summary = run_count_experiment(ensemble, domain, n_trials, seed, workers)
            prediction = predicted_number_variance(n, domain).leading_value
        else:
            assert test_function is not None
            ensemble = EnsembleSpec(family=family, N=n)
            summary = run_smooth_experiment(ensemble, test_function, n_trials, seed, workers)
            prediction = predicted_smooth_variance(
                n, 1, test_function, ensemble.geometry
            ).leading_value
        row = SweepRow(
            N=n,
            n_trials=summary.n_trials,
            mean=summary.mean,
            var=summary.variance,
            stderr_mean=summary.stderr_mean,
            stderr_var=summary.stderr_variance,
            prediction=prediction,
            ratio=summary.variance / prediction if prediction > 0 else None,
        )
        logger.info("sweep N=%d var=%.6g prediction=%.6g", n, row.var, prediction)
        rows.append(row)
    return rows


def count_method_agreement(
    ensemble: EnsembleSpec, domain: Domain, n_trials: int, seed: int
) -> tuple[float, int]:
    """Fraction of non-flagged trials where root counting and the argument principle agree.

    A trial where either method fails counts as compared and not agreeing.

    Returns:
        (agreement fraction, number of non-flagged trials compared).
    """
    validate_domain(domain)
    ensemble = experiment_ensemble(ensemble, domain=domain)
    tol = get_settings().boundary_tolerance * domain_scale(domain)
    agree = compared = 0
    for trial_index in range(n_trials):
        s = sample(ensemble, seed, trial_index)
        try:
            by_roots = count_in_domain(s, domain, tol)
            if by_roots.boundary_flag:
                continue
            by_winding = count_by_argument_principle(s, domain)
        except (RootFindingError, NearBoundaryZeroError) as e:
            logger.warning("trial %d: counting failed: %s", trial_index, e)
            compared += 1
            continue
        compared += 1
        agree += int(by_roots.count == by_winding)
    return (agree / compared if compared else 1.0), compared
