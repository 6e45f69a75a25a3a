"""Monte Carlo harness, moment merging and the normality test."""

import math

import numpy as np
import pytest
from scipy import stats

from gafzero.core.bipotential import bargmann_fock_bump_variance, variance_count
from gafzero.core.moments import MomentAccumulator
from gafzero.core import montecarlo
from gafzero.core.montecarlo import (
    bipotential_standardization,
    count_method_agreement,
    covering_ensemble,
    normality_test,
    run_count_experiment,
    sample_linear_statistics,
    variance_vs_n_sweep,
)
from gafzero.errors import (
    ConfigError,
    DegenerateSampleError,
    NearBoundaryZeroError,
    RootFindingError,
)
from gafzero.models import (
    EnsembleFamily,
    EnsembleSpec,
    Standardization,
    StandardizationSource,
    TestFunction,
)

from .helpers import make_domain, make_ensemble


def test_moment_merge_matches_batch():
    """Merging two halves gives the moments of the whole batch."""
    values = np.random.default_rng(5).exponential(size=1001)
    whole = MomentAccumulator.from_values(values)
    merged = MomentAccumulator.from_values(values[:300]).merge(
        MomentAccumulator.from_values(values[300:])
    )
    assert merged.n == whole.n
    for name in ("mean", "m2", "m3", "m4"):
        assert getattr(merged, name) == pytest.approx(getattr(whole, name), rel=1e-10)


def test_moment_merge_with_empty():
    """The empty accumulator is the identity."""
    batch = MomentAccumulator.from_values(np.array([1.0, 2.0, 4.0]))
    assert MomentAccumulator().merge(batch) == batch
    assert batch.merge(MomentAccumulator()) == batch
    assert batch.variance == pytest.approx(np.var([1.0, 2.0, 4.0], ddof=1))


def test_results_independent_of_worker_count(fs_unit_disk):
    """Shards merge in trial order, so one or two workers give identical summaries."""
    ensemble = make_ensemble("su2:6")
    single = run_count_experiment(ensemble, fs_unit_disk, 300, seed=11, workers=1)
    pooled = run_count_experiment(ensemble, fs_unit_disk, 300, seed=11, workers=2)
    assert single == pooled
    assert single.n_trials + single.n_degenerate == 300


def test_count_moments_match_exact_values(fs_unit_disk):
    """Empirical mean and variance agree with N/2 and the boundary integral."""
    ensemble = make_ensemble("su2:8")
    summary = run_count_experiment(ensemble, fs_unit_disk, 2000, seed=3)
    exact = variance_count(ensemble, fs_unit_disk).value
    assert abs(summary.mean - 4.0) < 4 * summary.stderr_mean
    assert abs(summary.variance - exact) < 4 * summary.stderr_variance


def test_too_few_trials(fs_unit_disk):
    """At least 100 trials are required."""
    with pytest.raises(ConfigError, match="at least 100"):
        run_count_experiment(make_ensemble("su2:8"), fs_unit_disk, 50, seed=0)


def test_count_geometry_mismatch(fs_unit_disk):
    """A Bargmann–Fock experiment needs a flat domain."""
    with pytest.raises(ConfigError):
        run_count_experiment(make_ensemble("bf:8"), fs_unit_disk, 200, seed=0)


def test_root_failure_is_a_convergence_error(monkeypatch, fs_unit_disk):
    """A trial whose roots do not converge fails the run instead of counting as degenerate."""

    def stuck(sample, domain, tol):
        raise RootFindingError("Aberth iteration stalled")

    monkeypatch.setattr(montecarlo, "count_in_domain", stuck)
    with pytest.raises(RootFindingError, match="trial 0: Aberth iteration stalled"):
        run_count_experiment(make_ensemble("su2:6"), fs_unit_disk, 200, seed=0, workers=1)


def test_count_agreement_counts_failures_as_disagreement(monkeypatch, fs_unit_disk):
    """Trials where the winding number cannot be rounded still enter the denominator."""

    def near_zero(sample, domain):
        raise NearBoundaryZeroError("winding 2.49 not near an integer", 0.49)

    monkeypatch.setattr(montecarlo, "count_by_argument_principle", near_zero)
    fraction, compared = count_method_agreement(make_ensemble("su2:6"), fs_unit_disk, 20, 0)
    assert fraction == 0.0
    assert compared == 20


def test_linear_statistics_mean():
    """The sample mean of Σφ(zeros) matches (N/π)∫φ."""
    summary, values = sample_linear_statistics(
        make_ensemble("bf:4"), TestFunction(sigma=0.5), 400, seed=2
    )
    assert len(values) == summary.n_trials
    assert abs(summary.mean - 1.0) < 4 * summary.stderr_mean


def test_covering_ensemble():
    """Series truncations grow with the radius; SU(2) is left alone."""
    bf = make_ensemble("bf:16")
    widened = covering_ensemble(bf, 2.0)
    assert widened.degree > bf.degree
    assert covering_ensemble(bf, 0.5) == bf
    su2 = make_ensemble("su2:16")
    assert covering_ensemble(su2, 10.0) == su2


def test_covering_ensemble_explicit_truncation_too_small():
    """A fixed truncation that cannot reach the radius is a configuration error."""
    fixed = EnsembleSpec(family=EnsembleFamily.BARGMANN_FOCK, N=16, truncation_degree=68)
    with pytest.raises(ConfigError, match="does not cover"):
        covering_ensemble(fixed, 2.0)


def test_normality_test_on_normal_quantiles():
    """Exact normal quantiles give KS statistic 1/(2n) and pass."""
    n = 1000
    x = stats.norm.ppf((np.arange(n) + 0.5) / n)
    standard = Standardization(
        source=StandardizationSource.BIPOTENTIAL, mean_used=0.0, sd_used=1.0
    )
    report = normality_test(x, standard)
    assert report.ks_statistic == pytest.approx(0.5 / n, abs=1e-12)
    assert report.critical_value_5pct == pytest.approx(1.3581 / math.sqrt(n), rel=1e-4)
    assert report.passed
    assert normality_test(x).standardization.source == StandardizationSource.EMPIRICAL


def test_normality_test_rejects_two_point_law():
    """A symmetric two-point sample is far from normal."""
    x = np.tile([-1.0, 1.0], 500)
    report = normality_test(x)
    assert not report.passed
    assert report.p_value < 1e-6


def test_normality_test_needs_samples():
    """Fewer than 500 samples is refused."""
    with pytest.raises(ConfigError, match="500"):
        normality_test(np.arange(100.0))


def test_normality_test_constant_sample():
    """Zero variance cannot be standardized."""
    with pytest.raises(DegenerateSampleError):
        normality_test(np.ones(600))


def test_bipotential_standardization():
    """Mean Nσ² and standard deviation from the exact variance."""
    standard = bipotential_standardization(make_ensemble("bf:16"), TestFunction(sigma=0.5))
    assert standard.source == StandardizationSource.BIPOTENTIAL
    assert standard.mean_used == pytest.approx(4.0)
    exact = math.sqrt(bargmann_fock_bump_variance(16, 0.5))
    assert standard.sd_used == pytest.approx(exact, rel=5e-3)


def test_sweep_rows(fs_unit_disk):
    """One row per degree, each carrying the √N prediction."""
    rows = variance_vs_n_sweep(EnsembleFamily.SU2, [4, 8], 100, seed=0, domain=fs_unit_disk)
    assert [row.N for row in rows] == [4, 8]
    assert rows[1].prediction == pytest.approx(rows[0].prediction * math.sqrt(2))
    assert all(row.ratio is not None and row.ratio > 0 for row in rows)


def test_dilated_sweep():
    """Bargmann–Fock at N = 1 on √N·U, compared with ν₁·Length(√N·∂U)."""
    rows = variance_vs_n_sweep(
        EnsembleFamily.BARGMANN_FOCK,
        [1, 4],
        100,
        seed=0,
        domain=make_domain("disk:flat:1.0"),
        dilate_domain=True,
    )
    assert rows[1].prediction == pytest.approx(2 * rows[0].prediction)
    assert rows[1].mean > rows[0].mean


@pytest.mark.parametrize(
    "kwargs,match",
    [
        ({"n_list": [8, 4]}, "increasing"),
        ({"n_list": []}, "increasing"),
        ({"n_list": [4], "test_function": TestFunction(sigma=0.5)}, "exactly one"),
        ({"n_list": [4], "dilate_domain": True}, "Bargmann"),
    ],
)
def test_sweep_rejects_bad_configuration(fs_unit_disk, kwargs, match):
    """Malformed sweeps fail before any trial runs."""
    with pytest.raises(ConfigError, match=match):
        variance_vs_n_sweep(
            EnsembleFamily.SU2, n_trials=100, seed=0, domain=fs_unit_disk, **kwargs
        )
