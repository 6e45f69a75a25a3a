"""Core numerical routines and run orchestration."""

from .bipotential import pair_log_moment, q_n, variance_count, variance_smooth
from .geometry import area, boundary_length, contains, validate_domain
from .montecarlo import (
    normality_test,
    run_count_experiment,
    run_smooth_experiment,
    variance_vs_n_sweep,
)
from .predictions import (
    expected_count,
    kappa_constant,
    nu_constant,
    offdiagonal_decay_scan,
    predicted_number_variance,
    predicted_smooth_variance,
    predicted_volume_variance,
    scaling_residual,
)
from .runner import RunOutcome, execute
from .selftest import run_selftest
from .zeros import count_in_domain, find_zeros, linear_statistic

__all__ = [
    "pair_log_moment",
    "q_n",
    "variance_count",
    "variance_smooth",
    "area",
    "boundary_length",
    "contains",
    "validate_domain",
    "normality_test",
    "run_count_experiment",
    "run_smooth_experiment",
    "variance_vs_n_sweep",
    "expected_count",
    "nu_constant",
    "kappa_constant",
    "offdiagonal_decay_scan",
    "predicted_number_variance",
    "predicted_smooth_variance",
    "predicted_volume_variance",
    "scaling_residual",
    "RunOutcome",
    "execute",
    "run_selftest",
    "count_in_domain",
    "find_zeros",
    "linear_statistic",
]
