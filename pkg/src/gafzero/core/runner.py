"""Dispatch a resolved RunConfig to the experiments and write its artifacts."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from ..errors import (
    EXIT_CONFIG,
    EXIT_CONVERGENCE,
    EXIT_OK,
    ConfigError,
    ConvergenceError,
    GafZeroError,
)
from ..models import (
    Command,
    EnsembleFamily,
    EnsembleSpec,
    GeometryKind,
    Prediction,
    RunConfig,
    StandardizationSource,
    Theorem,
)
from ..models.ensemble import FAMILY_GEOMETRY
from .artifacts import (
    REFINEMENT_COLUMNS,
    RESULT_COLUMNS,
    write_coefficient_dump,
    write_csv,
    write_json,
    write_zero_dump,
)
from .bipotential import variance_count, variance_smooth
from .geometry import boundary_length, domain_scale
from .montecarlo import (
    bipotential_standardization,
    experiment_ensemble,
    normality_test,
    run_count_experiment,
    run_smooth_experiment,
    sample_linear_statistics,
    variance_vs_n_sweep,
)
from .predictions import (
    correlation_mass,
    expected_count_prediction,
    offdiagonal_decay_scan,
    predicted_number_variance,
    predicted_smooth_variance,
    predicted_volume_variance,
    scaling_residual_scan,
)
from .selftest import run_selftest

logger = logging.getLogger(__name__)

KERNEL_CHECK_DEGREES = [64, 256]
DECAY_BAND = 2.0
PREDICTION_COLUMNS = [
    "theorem",
    "N",
    "m",
    "constant",
    "power",
    "geometric_factor",
    "leading_value",
    "alternate_value",
]
KERNEL_COLUMNS = [
    "N",
    "scaling_max_residual",
    "decay_threshold",
    "decay_max_kernel",
    "decay_reference",
    "correlation_mass",
]
NORMALITY_COLUMNS = [
    "n_samples",
    "ks_statistic",
    "p_value",
    "critical_value_5pct",
    "passed",
    "source",
    "mean_used",
    "sd_used",
]
SELFTEST_COLUMNS = ["name", "passed", "observed", "expected", "tolerance"]


@dataclass
class CommandResult:
    """Tabular rows for the CSV artifact and a JSON-ready result."""

    columns: list[str]
    rows: list[dict[str, Any]]
    result: Any
    ok: bool = True


@dataclass
class RunOutcome:
    """Exit status, what was computed and which files were written."""

    exit_code: int
    command: Command
    columns: list[str] = field(default_factory=list)
    rows: list[dict[str, Any]] = field(default_factory=list)
    result: Any = None
    artifacts: list[Path] = field(default_factory=list)
    error: Optional[str] = None


def _ratio(value: float, prediction: float) -> Optional[float]:
    return value / prediction if prediction > 0 else None


def _result_row(n: int, summary: Any, prediction: float) -> dict[str, Any]:
    return {
        "N": n,
        "n_trials": summary.n_trials,
        "mean": summary.mean,
        "var": summary.variance,
        "stderr_mean": summary.stderr_mean,
        "stderr_var": summary.stderr_variance,
        "prediction": prediction,
        "ratio": _ratio(summary.variance, prediction),
    }


def _ensemble(config: RunConfig) -> EnsembleSpec:
    if config.ensemble is None:
        raise ConfigError(f"'{config.command.value}' requires an ensemble")
    return config.ensemble


def _family_for(kind: GeometryKind) -> EnsembleFamily:
    return next(family for family, geometry in FAMILY_GEOMETRY.items() if geometry == kind)


def _simulate(config: RunConfig) -> CommandResult:
    ensemble = _ensemble(config)
    if config.domain is not None:
        tol = None
        if config.boundary_tolerance is not None:
            tol = config.boundary_tolerance * domain_scale(config.domain)
        summary = run_count_experiment(
            ensemble, config.domain, config.n_trials, config.seed, config.workers, tol
        )
        prediction = predicted_number_variance(ensemble.N, config.domain)
    else:
        assert config.test_function is not None
        summary = run_smooth_experiment(
            ensemble, config.test_function, config.n_trials, config.seed, config.workers
        )
        prediction = predicted_smooth_variance(
            ensemble.N, 1, config.test_function, ensemble.geometry
        )
    row = _result_row(ensemble.N, summary, prediction.leading_value)
    return CommandResult(
        RESULT_COLUMNS,
        [row],
        {
            "rows": [row],
            "summary": summary.model_dump(mode="json"),
            "prediction": prediction.model_dump(mode="json"),
        },
    )


def _prediction(config: RunConfig) -> Prediction:
    assert config.theorem is not None and config.N is not None
    n = config.N
    if config.theorem == Theorem.NUMBER_VARIANCE:
        if config.domain is None:
            raise ConfigError("number variance needs a domain")
        return predicted_number_variance(n, config.domain)
    if config.theorem == Theorem.VOLUME_VARIANCE:
        if config.boundary_volume is not None:
            return predicted_volume_variance(n, config.m, config.boundary_volume)
        if config.domain is not None and config.m == 1:
            return predicted_volume_variance(n, 1, boundary_length(config.domain))
        raise ConfigError("volume variance needs boundary_volume (or a domain when m = 1)")
    if config.theorem == Theorem.SMOOTH_VARIANCE:
        if config.test_function is None:
            raise ConfigError("smooth variance needs a test_function")
        geometry = None
        if config.ensemble is not None:
            geometry = config.ensemble.geometry
        elif config.domain is not None:
            geometry = config.domain.geometry
        return predicted_smooth_variance(n, config.m, config.test_function, geometry)
    if config.domain is None:
        raise ConfigError("expected count needs a domain")
    if config.ensemble is not None:
        ensemble = config.ensemble.with_degree(n)
    else:
        family = config.family or _family_for(config.domain.geometry.kind)
        ensemble = EnsembleSpec(family=family, N=n)
    return expected_count_prediction(ensemble, config.domain)


def _predict(config: RunConfig) -> CommandResult:
    prediction = _prediction(config)
    row = prediction.model_dump(mode="json")
    return CommandResult(PREDICTION_COLUMNS, [row], row)


def _bipotential(config: RunConfig) -> CommandResult:
    ensemble = _ensemble(config)
    if config.domain is not None:
        quadrature = variance_count(ensemble, config.domain, config.quadrature)
        prediction = predicted_number_variance(ensemble.N, config.domain)
    else:
        assert config.test_function is not None
        quadrature = variance_smooth(ensemble, config.test_function, config.smooth_quadrature)
        prediction = predicted_smooth_variance(
            ensemble.N, 1, config.test_function, ensemble.geometry
        )
    rows = [row.model_dump() for row in quadrature.table]
    return CommandResult(
        REFINEMENT_COLUMNS,
        rows,
        {
            "variance": quadrature.model_dump(mode="json"),
            "prediction": prediction.model_dump(mode="json"),
            "ratio": _ratio(quadrature.value, prediction.leading_value),
        },
    )


def _kernel_check(config: RunConfig) -> CommandResult:
    if config.ensemble is not None:
        ensembles = [config.ensemble]
    else:
        assert config.family is not None
        degrees = config.N_list or KERNEL_CHECK_DEGREES
        ensembles = [EnsembleSpec(family=config.family, N=n) for n in degrees]
    rows = []
    scans = []
    for ensemble in ensembles:
        scaling = scaling_residual_scan(ensemble)
        decay = offdiagonal_decay_scan(ensemble, DECAY_BAND)
        mass = correlation_mass(ensemble)
        rows.append(
            {
                "N": ensemble.N,
                "scaling_max_residual": scaling.max_residual,
                "decay_threshold": decay.threshold_distance,
                "decay_max_kernel": decay.max_kernel,
                "decay_reference": decay.reference,
                "correlation_mass": mass,
            }
        )
        scans.append(
            {
                "ensemble": ensemble.label(),
                "scaling": scaling.model_dump(mode="json"),
                "decay": decay.model_dump(mode="json"),
                "correlation_mass": mass,
            }
        )
    return CommandResult(KERNEL_COLUMNS, rows, {"rows": rows, "scans": scans})


def _normality(config: RunConfig) -> CommandResult:
    ensemble = _ensemble(config)
    assert config.test_function is not None
    summary, values = sample_linear_statistics(
        ensemble, config.test_function, config.n_trials, config.seed, config.workers
    )
    standardization = None
    if config.standardization == StandardizationSource.BIPOTENTIAL:
        standardization = bipotential_standardization(
            ensemble, config.test_function, config.smooth_quadrature
        )
    report = normality_test(values, standardization)
    row = {
        "n_samples": report.n_samples,
        "ks_statistic": report.ks_statistic,
        "p_value": report.p_value,
        "critical_value_5pct": report.critical_value_5pct,
        "passed": report.passed,
        "source": report.standardization.source.value,
        "mean_used": report.standardization.mean_used,
        "sd_used": report.standardization.sd_used,
    }
    return CommandResult(
        NORMALITY_COLUMNS,
        [row],
        {
            "report": report.model_dump(mode="json"),
            "passed": report.passed,
            "summary": summary.model_dump(mode="json"),
        },
    )


def _sweep(config: RunConfig) -> CommandResult:
    assert config.family is not None
    rows = variance_vs_n_sweep(
        config.family,
        config.N_list,
        config.n_trials,
        config.seed,
        domain=config.domain,
        test_function=config.test_function,
        workers=config.workers,
        dilate_domain=config.dilate,
    )
    dumped = [row.model_dump() for row in rows]
    return CommandResult(RESULT_COLUMNS, dumped, {"rows": dumped})


def _selftest(config: RunConfig) -> CommandResult:
    result = run_selftest(n_draws=config.n_draws, n_trials=config.n_trials, seed=config.seed)
    rows = [check.model_dump(include=set(SELFTEST_COLUMNS)) for check in result.checks]
    return CommandResult(SELFTEST_COLUMNS, rows, result.model_dump(mode="json"), ok=result.valid)


HANDLERS: dict[Command, Callable[[RunConfig], CommandResult]] = {
    Command.SIMULATE: _simulate,
    Command.PREDICT: _predict,
    Command.BIPOTENTIAL: _bipotential,
    Command.KERNEL_CHECK: _kernel_check,
    Command.NORMALITY: _normality,
    Command.SWEEP: _sweep,
    Command.SELFTEST: _selftest,
}


def _write_artifacts(config: RunConfig, computed: CommandResult) -> list[Path]:
    written = []
    if config.output is not None:
        written.append(write_csv(config.output, computed.columns, computed.rows, config))
    if config.json_output is not None:
        written.append(write_json(config.json_output, computed.result, config))
    if config.command == Command.SIMULATE and config.ensemble is not None:
        dump_ensemble = experiment_ensemble(config.ensemble, config.domain, config.test_function)
        if config.zeros_dump is not None:
            written.append(
                write_zero_dump(
                    config.zeros_dump, dump_ensemble, config.seed, config.n_trials, config
                )
            )
        if config.coefficients_dump is not None:
            written.append(
                write_coefficient_dump(
                    config.coefficients_dump, dump_ensemble, config.seed, config.n_trials, config
                )
            )
    return written


def execute(config: RunConfig) -> RunOutcome:
    """Run one command; artifacts are written only when it finishes.

    Returns:
        Outcome with exit code 0 on success, 2 on a numerical failure
        (including a failed self-test) and 3 on a configuration error.
    """
    logger.info("starting %s", config.command.value)
    try:
        computed = HANDLERS[config.command](config)
    except GafZeroError as e:
        logger.error("%s failed: %s", config.command.value, e)
        return RunOutcome(exit_code=e.exit_code, command=config.command, error=str(e))
    except ValidationError as e:
        logger.error("%s failed: %s", config.command.value, e)
        return RunOutcome(exit_code=EXIT_CONFIG, command=config.command, error=str(e))
    except ArithmeticError as e:
        failure = ConvergenceError(f"numerical failure: {type(e).__name__}: {e}")
        logger.error("%s failed: %s", config.command.value, failure)
        return RunOutcome(exit_code=failure.exit_code, command=config.command, error=str(failure))
    artifacts = _write_artifacts(config, computed)
    exit_code = EXIT_OK if computed.ok else EXIT_CONVERGENCE
    logger.info("finished %s with exit code %d", config.command.value, exit_code)
    return RunOutcome(
        exit_code=exit_code,
        command=config.command,
        columns=computed.columns,
        rows=computed.rows,
        result=computed.result,
        artifacts=artifacts,
    )
