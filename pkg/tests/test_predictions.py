"""Leading-order predictions, universal constants and kernel scans."""

import math

import pytest

from gafzero.core.predictions import (
    correlation_mass,
    expected_count,
    expected_count_prediction,
    expected_linear_statistic,
    kappa_constant,
    kappa_constant_integral,
    normality_conditions,
    nu_constant,
    nu_constant_integral,
    offdiagonal_decay_scan,
    predicted_number_variance,
    predicted_smooth_variance,
    predicted_volume_variance,
    scaling_residual,
    scaling_residual_scan,
)
from gafzero.core.special import zeta
from gafzero.errors import ConfigError
from gafzero.models import TestFunction, Theorem

from .helpers import make_domain, make_ensemble


@pytest.mark.parametrize("m", [1, 2, 3])
def test_nu_closed_form_matches_integral(m):
    """ν_m = π^{m−5/2}ζ(m+½)/8 agrees with its defining integral."""
    assert nu_constant(m) == pytest.approx(nu_constant_integral(m), rel=1e-8)


@pytest.mark.parametrize("m", [4, 5, 6])
def test_nu_integral_finite_in_higher_dimension(m):
    """The radial ν integrand stays finite far out, so higher m still matches."""
    value = nu_constant_integral(m)
    assert math.isfinite(value)
    assert value == pytest.approx(nu_constant(m), rel=1e-8)


@pytest.mark.parametrize("m", [1, 2])
def test_kappa_closed_form_matches_integral(m):
    """κ_m = π^{m−2}ζ(m+2)/4 agrees with its defining integral."""
    assert kappa_constant(m) == pytest.approx(kappa_constant_integral(m), rel=1e-8)


def test_nu_one():
    """ν₁ ≈ 0.0586."""
    assert nu_constant(1) == pytest.approx(zeta(1.5) / (8 * math.pi**1.5))
    assert nu_constant(1) == pytest.approx(0.05864, abs=1e-5)


def test_number_variance_prediction(fs_unit_disk):
    """√N · ν₁ · π for the FS unit disk."""
    prediction = predicted_number_variance(100, fs_unit_disk)
    assert prediction.theorem == Theorem.NUMBER_VARIANCE
    assert prediction.power == 0.5
    assert prediction.geometric_factor == pytest.approx(math.pi)
    assert prediction.leading_value == pytest.approx(10 * nu_constant(1) * math.pi)


def test_volume_variance_reduces_to_number_variance(fs_unit_disk):
    """For m = 1 the volume law is the number-variance law."""
    number = predicted_number_variance(64, fs_unit_disk)
    volume = predicted_volume_variance(64, 1, math.pi)
    assert volume.leading_value == pytest.approx(number.leading_value)
    assert predicted_volume_variance(64, 2, 1.0).power == pytest.approx(-0.5)


def test_volume_variance_rejects_negative_volume():
    """Boundary volume must be non-negative."""
    with pytest.raises(ConfigError):
        predicted_volume_variance(64, 1, -1.0)


def test_smooth_prediction_forms_agree():
    """κ₁‖∂∂̄φ‖²/N equals ζ(3)‖Δφ‖²/(16πN) for a Euclidean bump."""
    prediction = predicted_smooth_variance(50, 1, TestFunction(sigma=1.0))
    assert prediction.geometric_factor == pytest.approx(math.pi)
    assert prediction.leading_value == pytest.approx(zeta(3.0) / (4 * 50))
    assert prediction.alternate_value == pytest.approx(prediction.leading_value)


def test_smooth_prediction_higher_dimension():
    """Only m = 1 carries the alternate form."""
    prediction = predicted_smooth_variance(50, 2, TestFunction(sigma=1.0))
    assert prediction.alternate_value is None
    assert prediction.power == -2.0


def test_expected_count(fs_unit_disk):
    """N·Area/π: half the zeros lie in the FS unit disk."""
    assert expected_count(make_ensemble("su2:10"), fs_unit_disk) == pytest.approx(5.0)
    prediction = expected_count_prediction(make_ensemble("su2:10"), fs_unit_disk)
    assert prediction.leading_value == pytest.approx(5.0)
    assert expected_count(make_ensemble("bf:10"), make_domain("disk:flat:1.0")) == pytest.approx(
        10.0
    )


def test_expected_count_geometry_mismatch(fs_unit_disk):
    """Bargmann–Fock needs a flat domain."""
    with pytest.raises(ConfigError):
        expected_count(make_ensemble("bf:10"), fs_unit_disk)


def test_expected_linear_statistic():
    """(N/π)∫φ = Nσ² for a flat unit-amplitude bump."""
    value = expected_linear_statistic(make_ensemble("bf:12"), TestFunction(sigma=0.5))
    assert value == pytest.approx(12 * 0.25)


def test_bargmann_fock_scaling_is_exact():
    """The Bargmann–Fock kernel is already Gaussian in normal coordinates."""
    scan = scaling_residual_scan(make_ensemble("bf:64"))
    assert scan.max_residual < 1e-12
    assert abs(scaling_residual(make_ensemble("bf:9"), 1 + 1j, -0.5j).residual) < 1e-12


def test_su2_scaling_residual_shrinks_like_one_over_n():
    """Ratio max|R_4N|/max|R_N| sits in [0.2, 0.3], not the nominal N^{-1/2} window [0.3, 0.8]."""
    coarse = scaling_residual_scan(make_ensemble("su2:64")).max_residual
    fine = scaling_residual_scan(make_ensemble("su2:256")).max_residual
    assert coarse > 0
    assert 0.2 <= fine / coarse <= 0.3


def test_su2_offdiagonal_decay():
    """Beyond 2√(log N / N) the SU(2) kernel is below 10/N²."""
    scan = offdiagonal_decay_scan(make_ensemble("su2:256"), 2.0)
    assert scan.max_kernel < 10 / 256**2
    assert scan.threshold_distance == pytest.approx(2 * math.sqrt(math.log(256) / 256))


def test_bargmann_fock_decay_meets_gaussian_reference():
    """The Bargmann–Fock maximum sits exactly at N^{−b²/2}."""
    scan = offdiagonal_decay_scan(make_ensemble("bf:256"), 2.0)
    assert scan.max_kernel == pytest.approx(scan.reference, rel=1e-9)


def test_decay_scan_needs_two():
    """log N / N is useless at N = 1."""
    with pytest.raises(ConfigError):
        offdiagonal_decay_scan(make_ensemble("su2:1"), 2.0)


@pytest.mark.parametrize(
    "literal,expected",
    [
        ("bf:16", 2 * math.pi / 16),
        ("su2:16", 2 * math.pi / 18),
        ("su11:16", 2 * math.pi / 14),
    ],
)
def test_correlation_mass(literal, expected):
    """∫P_N(0, w) ω(w) in closed form for each family."""
    assert correlation_mass(make_ensemble(literal)) == pytest.approx(expected, rel=1e-4)


def test_normality_conditions_bargmann_fock():
    """The kernel-squared ratio approaches ½‖∂∂̄φ‖² from below."""
    conditions = normality_conditions(make_ensemble("bf:64"), TestFunction(sigma=0.5))
    assert conditions.correlation_mass == pytest.approx(2 * math.pi / 64, rel=1e-4)
    assert 0.85 < conditions.ratio / conditions.limit < 1.0
