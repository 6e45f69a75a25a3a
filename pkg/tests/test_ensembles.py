"""Kernel evaluator and sampling tests."""

import math

import numpy as np
import pytest

from gafzero.ensembles import (
    EnsembleRegistry,
    draw_coefficients,
    evaluate,
    lambda_and_derivatives,
    normalized_kernel,
    sample,
)
from gafzero.errors import ChartDomainError
from gafzero.models import EnsembleFamily, EnsembleSpec, SectionSample, default_truncation

from .helpers import make_ensemble

POINTS = np.array([0.0, 0.3 + 0.1j, -0.5 + 0.4j, 0.1 - 0.7j])


def test_closed_form_kernels():
    """P_N(0, w) in closed form for the three families."""
    assert float(normalized_kernel(make_ensemble("su2:4"), 0j, 1 + 0j)) == pytest.approx(0.25)
    assert float(normalized_kernel(make_ensemble("bf:2"), 0j, 1 + 0j)) == pytest.approx(
        math.exp(-1.0)
    )
    assert float(normalized_kernel(make_ensemble("su11:2"), 0j, 0.5 + 0j)) == pytest.approx(0.75)


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_kernel_matches_basis_sum(family):
    """Closed-form P_N agrees with the explicit orthonormal basis at N = 12."""
    evaluator = EnsembleRegistry.get(EnsembleSpec(family=family, N=12))
    z, w = np.meshgrid(POINTS, POINTS)
    assert np.max(np.abs(evaluator.basis_kernel(z, w) - evaluator.normalized_kernel(z, w))) < 1e-10


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_log_diagonal_matches_basis_sum(family):
    """log Π_N(z, z) in closed form equals the truncated basis sum."""
    evaluator = EnsembleRegistry.get(EnsembleSpec(family=family, N=12))
    closed = evaluator.log_diagonal(POINTS)
    assert np.max(np.abs(evaluator.log_basis_diagonal(POINTS) - closed)) < 1e-9


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_expected_density(family):
    """(1/π)∂∂̄ log Π_N(z, z) equals N·ρ(z)/π."""
    ensemble = EnsembleSpec(family=family, N=12)
    density = EnsembleRegistry.get(ensemble).expected_density(POINTS)
    target = 12 * ensemble.geometry.density(POINTS) / math.pi
    assert np.max(np.abs(density / target - 1.0)) < 1e-4


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_kernel_is_symmetric_and_bounded(family):
    """P_N(z, w) = P_N(w, z) ∈ [0, 1] with P_N(z, z) = 1."""
    evaluator = EnsembleRegistry.get(EnsembleSpec(family=family, N=7))
    z, w = np.meshgrid(POINTS, POINTS)
    p = evaluator.normalized_kernel(z, w)
    assert np.allclose(p, p.T)
    assert np.all((p >= 0) & (p <= 1))
    assert np.allclose(np.diag(p), 1.0)


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_first_derivatives_match_finite_differences(family):
    """∂Λ/∂z̄ = ½(∂x + i∂y)Λ agrees with central differences."""
    ensemble = EnsembleSpec(family=family, N=5)
    evaluator = EnsembleRegistry.get(ensemble)
    z, w, h = 0.2 + 0.1j, -0.3 + 0.25j, 1e-6
    dx = (evaluator.lambda_(z + h, w) - evaluator.lambda_(z - h, w)) / (2 * h)
    dy = (evaluator.lambda_(z + 1j * h, w) - evaluator.lambda_(z - 1j * h, w)) / (2 * h)
    d = lambda_and_derivatives(ensemble, z, w)
    assert complex(d.dzbar) == pytest.approx(0.5 * (dx + 1j * dy), abs=1e-6)
    assert complex(d.dzbar_dwbar) == 0


def test_diagonal_is_flagged():
    """First derivatives vanish on the diagonal and the entry is marked."""
    d = lambda_and_derivatives(make_ensemble("su2:8"), 0.3 + 0j, 0.3 + 0j)
    assert bool(d.on_diagonal)
    assert complex(d.dzbar) == 0


def test_su11_rejects_points_outside_disk():
    """SU(1,1) only lives on the unit disk."""
    with pytest.raises(ChartDomainError):
        normalized_kernel(make_ensemble("su11:4"), 0j, 1.5 + 0j)


def test_coefficients_are_reproducible():
    """The same (seed, trial) gives the same draw, and coefficient j ignores the length."""
    a = draw_coefficients(10, seed=3, trial_index=5)
    b = draw_coefficients(10, seed=3, trial_index=5)
    longer = draw_coefficients(20, seed=3, trial_index=5)
    assert np.array_equal(a, b)
    assert np.array_equal(a, longer[:10])
    assert not np.array_equal(a, draw_coefficients(10, seed=3, trial_index=6))


def test_coefficients_have_unit_variance():
    """E|c|² = 1 for the standard complex Gaussian."""
    c = np.concatenate([draw_coefficients(1000, seed=0, trial_index=i) for i in range(20)])
    assert float(np.mean(np.abs(c) ** 2)) == pytest.approx(1.0, abs=0.05)


def test_sample_dimension():
    """A sample carries degree + 1 coefficients."""
    assert len(sample(make_ensemble("su2:9"), 0, 0).coefficients) == 10
    bf = make_ensemble("bf:16")
    assert len(sample(bf, 0, 0).coefficients) == bf.degree + 1


def test_truncation_rule():
    """Bargmann–Fock truncation follows ⌈NR² + 8√(NR²) + 20⌉."""
    assert default_truncation(EnsembleFamily.BARGMANN_FOCK, 16, 1.0) == 16 + 32 + 20
    assert default_truncation(EnsembleFamily.SU2, 16, 1.0) == 16


def test_truncation_below_minimum_rejected():
    """An explicit truncation under the rule is refused."""
    with pytest.raises(ValueError, match="below the minimum"):
        EnsembleSpec(family=EnsembleFamily.BARGMANN_FOCK, N=16, truncation_degree=10)


def test_su11_needs_n_at_least_two():
    """SU(1,1) with N = 1 is not normalizable."""
    with pytest.raises(ValueError, match="N >= 2"):
        EnsembleSpec(family=EnsembleFamily.SU11, N=1)


def test_evaluate_matches_direct_polynomial():
    """Log-space evaluation agrees with the polynomial Σ a_j z^j."""
    ensemble = make_ensemble("su2:6")
    s = sample(ensemble, 1, 2)
    weights = np.exp(EnsembleRegistry.get(ensemble).log_weights())
    a = s.coefficients * weights
    z = np.array([0.2 + 0.3j, -1.5 + 0.2j, 3j])
    log_modulus, phase = evaluate(s, z)
    direct = np.polynomial.polynomial.polyval(z, a)
    assert np.allclose(np.exp(log_modulus + 1j * phase), direct, rtol=1e-10)


def test_evaluate_large_argument_does_not_overflow():
    """Far points of a high degree section give finite log-moduli."""
    s = sample(make_ensemble("su2:400"), 0, 0)
    log_modulus, _ = evaluate(s, np.array([1e6 + 0j]))
    assert np.isfinite(log_modulus).all()


def test_section_sample_checks_length():
    """Coefficient vectors of the wrong length are rejected."""
    with pytest.raises(ValueError, match="expected 5 coefficients"):
        SectionSample(coefficients=np.ones(3), ensemble=make_ensemble("su2:4"))


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_kernel_is_rotation_invariant(family):
    """P_N(e^{iθ}z, e^{iθ}w) = P_N(z, w) for every family."""
    ensemble = EnsembleSpec(family=family, N=9)
    z, w = np.meshgrid(POINTS, POINTS)
    rotation = np.exp(0.9j)
    turned = normalized_kernel(ensemble, rotation * z, rotation * w)
    assert np.allclose(turned, normalized_kernel(ensemble, z, w), rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("family", list(EnsembleFamily))
def test_kernel_decreases_with_n(family):
    """At a fixed pair z ≠ w, P_N falls strictly as N grows."""
    z, w = 0.1 + 0.2j, -0.3 + 0.1j
    values = [
        float(normalized_kernel(EnsembleSpec(family=family, N=n), z, w)) for n in (2, 4, 8, 16, 32)
    ]
    assert all(0.0 < v < 1.0 for v in values)
    assert all(later < earlier for earlier, later in zip(values, values[1:]))
