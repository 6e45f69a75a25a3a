"""Coefficient sampling and stable section evaluation."""

import math
from typing import Any

import numpy as np

from ..errors import DegenerateSampleError
from ..models import EnsembleSpec, SectionSample
from .registry import EnsembleRegistry

EVALUATION_CHUNK = 2048


def trial_generator(seed: int, trial_index: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by (seed, trial_index)."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial_index,)))
    )


def draw_coefficients(dimension: int, seed: int, trial_index: int) -> np.ndarray:
    """Standard complex Gaussians; entry j is the j-th (re, im) pair of the stream.

    The pairwise layout makes coefficient j independent of the vector length.
    """
    pairs = trial_generator(seed, trial_index).standard_normal((dimension, 2))
    return (pairs[:, 0] + 1j * pairs[:, 1]) / math.sqrt(2.0)


def sample(ensemble: EnsembleSpec, seed: int, trial_index: int) -> SectionSample:
    """Draw the coefficient vector of one trial.

    Args:
        ensemble: Ensemble to sample.
        seed: Base seed.
        trial_index: Trial counter.

    Returns:
        A sample with ``ensemble.dimension`` coefficients.
    """
    return SectionSample(
        coefficients=draw_coefficients(ensemble.dimension, seed, trial_index),
        ensemble=ensemble,
        seed=seed,
        trial_index=trial_index,
    )


def log_coefficients(sample: SectionSample) -> tuple[np.ndarray, np.ndarray]:
    """log|a_j| and arg a_j of the monomial coefficients a_j = c_j e^{ℓ_j}.

    Raises:
        DegenerateSampleError: Every coefficient is zero.
    """
    c = sample.coefficients
    if not np.any(c != 0):
        raise DegenerateSampleError("all coefficients are zero")
    weights = EnsembleRegistry.get(sample.ensemble).log_weights()
    with np.errstate(divide="ignore"):
        return weights + np.log(np.abs(c)), np.angle(c)


def evaluate(sample: SectionSample, z: Any) -> tuple[np.ndarray, np.ndarray]:
    """s(z) as (log-modulus, phase); log-modulus is −∞ where s vanishes.

    Each term is formed in log space and shifted by the largest one before
    summation, so large N and large |z| neither overflow nor underflow.

    Raises:
        DegenerateSampleError: Every coefficient is zero.
        ChartDomainError: SU(1,1) point outside the unit disk.
    """
    EnsembleRegistry.get(sample.ensemble).check_chart(z)
    log_abs, arg = log_coefficients(sample)
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    j = np.arange(len(log_abs))
    log_modulus = np.empty(flat.shape)
    phase = np.empty(flat.shape)
    for start in range(0, len(flat), EVALUATION_CHUNK):
        block = flat[start : start + EVALUATION_CHUNK]
        with np.errstate(divide="ignore", invalid="ignore"):
            log_r = np.log(np.abs(block))
            re = log_abs + np.where(j == 0, 0.0, j * log_r[:, None])
        im = arg + j * np.angle(block)[:, None]
        shift = np.max(re, axis=1, keepdims=True)
        shift = np.where(np.isfinite(shift), shift, 0.0)
        total = np.sum(np.exp(re - shift + 1j * im), axis=1)
        with np.errstate(divide="ignore"):
            log_modulus[start : start + len(block)] = shift[:, 0] + np.log(np.abs(total))
        phase[start : start + len(block)] = np.angle(total)
    return log_modulus.reshape(z.shape), phase.reshape(z.shape)
