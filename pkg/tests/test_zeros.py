"""Root finding, counting and linear statistic tests."""

import math

import numpy as np
import pytest

from gafzero.core.geometry import classify_points
from gafzero.core.montecarlo import count_method_agreement
from gafzero.core.zeros import (
    count_by_argument_principle,
    count_in_domain,
    effective_degree,
    find_zeros,
    linear_statistic,
)
from gafzero.ensembles import EnsembleRegistry, sample
from gafzero.errors import ChartDomainError, ConfigError, DegenerateSampleError
from gafzero.models import EnsembleFamily, EnsembleSpec, SectionSample, TestFunction

from .helpers import make_domain, make_ensemble


def section_with_roots(roots: list[complex]) -> SectionSample:
    """SU(2) sample whose polynomial is Π(z − r)."""
    ensemble = make_ensemble(f"su2:{len(roots)}")
    a = np.polynomial.polynomial.polyfromroots(roots)
    weights = np.exp(EnsembleRegistry.get(ensemble).log_weights())
    return SectionSample(coefficients=a / weights, ensemble=ensemble)


def test_roots_match_reference():
    """Aberth iteration reproduces numpy's roots on a random sample."""
    s = sample(make_ensemble("su2:20"), 4, 0)
    weights = np.exp(EnsembleRegistry.get(s.ensemble).log_weights())
    reference = np.polynomial.polynomial.polyroots(s.coefficients * weights)
    zeros = find_zeros(s)
    assert len(zeros) == 20
    assert zeros.converged
    distance = np.abs(reference[:, None] - zeros.points[None, :]).min(axis=1)
    assert np.max(distance / np.maximum(1.0, np.abs(reference))) < 1e-8


def test_known_roots():
    """Planted roots are recovered."""
    zeros = find_zeros(section_with_roots([0.5, 3.0, -1j]))
    assert sorted(zeros.points, key=lambda z: (z.real, z.imag)) == pytest.approx(
        [-1j, 0.5, 3.0], abs=1e-10
    )


def test_zero_at_origin_is_deflated():
    """A vanishing constant term puts an exact zero at the origin."""
    s = section_with_roots([0.0, 2.0])
    zeros = find_zeros(s)
    assert 0j in list(zeros.points)
    assert len(zeros) == 2


def test_zeros_at_infinity_dropped():
    """A vanishing top coefficient lowers the number of chart zeros."""
    ensemble = make_ensemble("su2:3")
    s = SectionSample(coefficients=np.array([1.0, 2.0, 1.0, 0.0]), ensemble=ensemble)
    assert effective_degree(s) == 2
    assert len(find_zeros(s)) == 2


def test_all_zero_coefficients():
    """The zero section has no zero set."""
    s = SectionSample(coefficients=np.zeros(5), ensemble=make_ensemble("su2:4"))
    with pytest.raises(DegenerateSampleError):
        find_zeros(s)


def test_count_in_domain(fs_unit_disk):
    """One of the roots 0.5 and 3 lies in the unit disk, one in its complement."""
    s = section_with_roots([0.5, 3.0])
    assert count_in_domain(s, fs_unit_disk).count == 1
    assert count_in_domain(s, make_domain("!disk:fs:1.0")).count == 1
    assert count_in_domain(s, make_domain("sphere")).count == 2


def test_boundary_flag(fs_unit_disk):
    """A root on the unit circle is flagged."""
    result = count_in_domain(section_with_roots([1.0, 3.0]), fs_unit_disk)
    assert result.boundary_flag


def test_count_in_domain_rejects_other_geometry():
    """An SU(2) section cannot be counted in a hyperbolic or flat domain."""
    s = section_with_roots([0.5, 3.0])
    with pytest.raises(ConfigError, match="hyperbolic domain does not match"):
        count_in_domain(s, make_domain("disk:hyperbolic:0.5"))
    with pytest.raises(ConfigError, match="flat domain"):
        count_in_domain(s, make_domain("disk:flat:1.0"))


def test_argument_principle(fs_unit_disk):
    """The winding number counts the same zeros, for disks and complements."""
    s = section_with_roots([0.5, 3.0, 0.2 + 0.1j])
    assert count_by_argument_principle(s, fs_unit_disk) == 2
    assert count_by_argument_principle(s, make_domain("!disk:fs:1.0")) == 1
    assert count_by_argument_principle(s, make_domain("annulus:fs:0.4:4.0")) == 2
    assert count_by_argument_principle(s, make_domain("polygon:fs:0,0.05;1,0.05;1,1;0,1")) == 1


def test_methods_agree_on_random_samples(fs_unit_disk):
    """Root counting and the argument principle agree on random SU(2) sections."""
    fraction, compared = count_method_agreement(make_ensemble("su2:12"), fs_unit_disk, 60, 2)
    assert compared >= 55
    assert fraction >= 0.98


def test_linear_statistic():
    """Σφ(zeros) for planted roots."""
    s = section_with_roots([0.5, 3.0])
    bump = TestFunction(sigma=1.0)
    assert linear_statistic(s, bump) == pytest.approx(math.exp(-0.25) + math.exp(-9.0))
    assert linear_statistic(s, TestFunction(sigma=1.0, amplitude=0.0)) == 0.0


def test_linear_statistic_su11_support():
    """A bump whose support leaves the disk is refused under SU(1,1)."""
    s = sample(make_ensemble("su11:4"), 0, 0)
    with pytest.raises(ChartDomainError):
        linear_statistic(s, TestFunction(sigma=0.5))


def test_su2_count_is_conserved():
    """Zeros inside U, inside its complement and in the boundary band add up to N."""
    ensemble = make_ensemble("su2:20")
    disk, outside = make_domain("disk:fs:0.8"), make_domain("!disk:fs:0.8")
    tol = 0.05
    banded = 0
    for trial in range(40):
        s = sample(ensemble, 8, trial)
        in_band = int(np.sum(classify_points(disk, find_zeros(s).points, tol) == 0))
        banded += in_band
        total = count_in_domain(s, disk, tol).count + count_in_domain(s, outside, tol).count
        assert total + in_band == 20
    assert banded > 0


@pytest.mark.parametrize(
    ("family", "n", "bound", "literal"),
    [
        (EnsembleFamily.BARGMANN_FOCK, 16, 1.0, "disk:flat:1.0"),
        (EnsembleFamily.SU11, 8, 0.6, "disk:hyperbolic:0.5"),
    ],
)
def test_doubling_truncation_keeps_counts(family, n, bound, literal):
    """A series truncated twice as far counts the same zeros in U."""
    base = EnsembleSpec(family=family, N=n, radius_bound=bound)
    doubled = EnsembleSpec(
        family=family, N=n, truncation_degree=2 * base.degree, radius_bound=bound
    )
    domain = make_domain(literal)
    changed = compared = 0
    for trial in range(200):
        short = count_in_domain(sample(base, 3, trial), domain)
        long = count_in_domain(sample(doubled, 3, trial), domain)
        if short.boundary_flag or long.boundary_flag:
            continue
        compared += 1
        changed += int(short.count != long.count)
    assert compared >= 195
    assert changed <= 1
