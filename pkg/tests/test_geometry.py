"""Domain geometry tests."""

import math

import numpy as np
import pytest

from gafzero.core.geometry import (
    apportion,
    area,
    boundary_components,
    boundary_length,
    boundary_nodes,
    chart_perimeter,
    contains,
    dilate,
    node_allocation,
    validate_domain,
)
from gafzero.errors import ConfigError, InvalidDomainError
from gafzero.models import Containment

from .helpers import make_domain


def test_hemisphere_area_and_length(fs_unit_disk):
    """FS disk of radius 1 is half the sphere with an equator of length π."""
    assert area(fs_unit_disk) == pytest.approx(math.pi / 2, rel=1e-12)
    assert boundary_length(fs_unit_disk) == pytest.approx(math.pi, rel=1e-12)


def test_sphere_and_complement_areas():
    """The whole sphere has area π and a disk plus its complement fill it."""
    assert area(make_domain("sphere")) == pytest.approx(math.pi)
    disk = make_domain("disk:fs:0.5")
    outside = make_domain("!disk:fs:0.5")
    assert area(disk) + area(outside) == pytest.approx(math.pi, rel=1e-12)
    assert boundary_length(make_domain("sphere")) == 0.0


def test_off_center_fs_disk_area():
    """A chart disk about 1 has the FS area of the spherical cap it maps to."""
    domain = make_domain("disk:fs:0.5@1,0")
    # Cap bounded by the circle |z − 1| = 0.5: compare with a fine polar sum.
    r = np.linspace(0, 0.5, 2001)[1:]
    theta = np.linspace(0, 2 * math.pi, 2001)[:-1]
    z = 1.0 + r[:, None] * np.exp(1j * theta[None, :])
    dr, dt = r[1] - r[0], theta[1] - theta[0]
    numeric = float(np.sum(r[:, None] / (1 + np.abs(z) ** 2) ** 2) * dr * dt)
    assert area(domain) == pytest.approx(numeric, rel=2e-3)


def test_flat_shapes():
    """Flat disk, annulus and square have their Euclidean area and perimeter."""
    disk = make_domain("disk:flat:0.5")
    assert area(disk) == pytest.approx(math.pi / 4)
    assert boundary_length(disk) == pytest.approx(math.pi)
    annulus = make_domain("annulus:flat:0.5:1.0")
    assert area(annulus) == pytest.approx(0.75 * math.pi)
    assert boundary_length(annulus) == pytest.approx(3 * math.pi)
    square = make_domain("polygon:flat:0,0;1,0;1,1;0,1")
    assert area(square) == pytest.approx(1.0, rel=1e-12)
    assert boundary_length(square) == pytest.approx(4.0, rel=1e-12)


def test_polygon_orientation_is_irrelevant():
    """Clockwise vertex lists give the same area."""
    clockwise = make_domain("polygon:flat:0,0;0,1;1,1;1,0")
    assert area(clockwise) == pytest.approx(1.0, rel=1e-12)


def test_hyperbolic_disk_area():
    """Hyperbolic disk of chart radius r has area πr²/(1 − r²)."""
    assert area(make_domain("disk:hyperbolic:0.5")) == pytest.approx(math.pi / 3, rel=1e-12)


def test_contains_disk():
    """Inside, outside and the boundary band of a flat disk."""
    disk = make_domain("disk:flat:1.0")
    assert contains(disk, 0j, 1e-9) == Containment.INSIDE
    assert contains(disk, 2 + 0j, 1e-9) == Containment.OUTSIDE
    assert contains(disk, 1 + 1e-12j, 1e-9) == Containment.BOUNDARY


def test_contains_complement_and_polygon():
    """Complement flips membership; the square is classified by ray casting."""
    outside = make_domain("!disk:fs:1.0")
    assert contains(outside, 0j, 1e-9) == Containment.OUTSIDE
    assert contains(outside, 3 + 0j, 1e-9) == Containment.INSIDE
    square = make_domain("polygon:flat:0,0;1,0;1,1;0,1")
    assert contains(square, 0.5 + 0.5j, 1e-9) == Containment.INSIDE
    assert contains(square, 1.5 + 0.5j, 1e-9) == Containment.OUTSIDE
    assert contains(square, 1.0 + 0.5j, 1e-9) == Containment.BOUNDARY


def test_self_intersecting_polygon_rejected():
    """A bowtie is not a domain."""
    with pytest.raises(InvalidDomainError, match="intersect"):
        validate_domain(make_domain("polygon:flat:0,0;1,1;1,0;0,1"))


def test_cusp_rejected():
    """A polygon that doubles back on itself has a cusp."""
    with pytest.raises(InvalidDomainError, match="cusp"):
        validate_domain(make_domain("polygon:flat:0,0;2,0;1,0"))


def test_hyperbolic_domain_must_stay_inside_disk():
    """Closure touching the unit circle is rejected."""
    with pytest.raises(InvalidDomainError, match="unit disk"):
        validate_domain(make_domain("disk:hyperbolic:1.0"))


def test_complement_of_sphere_rejected():
    """The complement of the sphere is empty."""
    with pytest.raises(InvalidDomainError, match="empty"):
        area(make_domain("!sphere"))


def test_boundary_weights_sum_to_perimeter():
    """Node weights add up to the chart perimeter, offset or not."""
    for literal in ("disk:flat:2.0", "annulus:fs:0.5:2.0", "polygon:flat:0,0;1,0;1,1;0,1"):
        domain = make_domain(literal)
        perimeter = chart_perimeter(domain)
        for offset in (False, True):
            nodes = boundary_nodes(domain, 64, offset=offset)
            assert float(np.sum(nodes.weight)) == pytest.approx(perimeter, rel=1e-12)


def test_offset_nodes_avoid_regular_nodes_and_corners():
    """The shifted rule never meets the regular one, and corners are never nodes."""
    square = make_domain("polygon:flat:0,0;1,0;1,1;0,1")
    regular = boundary_nodes(square, 40).z
    shifted = boundary_nodes(square, 40, offset=True).z
    assert np.min(np.abs(regular[:, None] - shifted[None, :])) > 1e-6
    corners = np.array([0, 1, 1 + 1j, 1j])
    assert np.min(np.abs(regular[:, None] - corners[None, :])) > 1e-6


def test_sphere_has_no_boundary_nodes():
    """The whole sphere has an empty boundary rule."""
    assert len(boundary_nodes(make_domain("sphere"), 64).z) == 0


def test_node_allocation_minimum():
    """Fewer than sixteen boundary nodes is an invalid domain rule."""
    with pytest.raises(InvalidDomainError, match="at least 16"):
        node_allocation(make_domain("disk:flat:1.0"), 4)
    with pytest.raises(InvalidDomainError, match="at least 16"):
        boundary_nodes(make_domain("polygon:flat:0,0;1,0;1,1;0,1"), 4)


def test_square_gets_exactly_n_nodes():
    """The unit square with 16 nodes gets 4 per edge and weights summing to 4."""
    nodes = boundary_nodes(make_domain("polygon:flat:0,0;1,0;1,1;0,1"), 16)
    assert len(nodes.z) == 16
    assert float(np.sum(nodes.weight)) == pytest.approx(4.0, rel=1e-12)
    assert int(np.sum(np.abs(nodes.z.imag) < 1e-12)) == 4


def test_polygon_curve_small_rule_is_exact():
    """An explicit 8 point rule on the square keeps 2 points per edge."""
    square = boundary_components(make_domain("polygon:flat:0,0;1,0;1,1;0,1"))[0]
    s, weight = square.node_params(8)
    assert len(s) == 8
    assert np.bincount(np.floor(s).astype(int)).tolist() == [2, 2, 2, 2]
    assert float(np.sum(weight)) == pytest.approx(4.0, rel=1e-12)


@pytest.mark.parametrize("n", [16, 17, 101, 257])
def test_apportion_is_exact(n):
    """Shares add up to n and respect the per-piece minimum."""
    counts = apportion(n, [3.0, 1.0, 0.01, 2.5], 4)
    assert int(np.sum(counts)) == n
    assert np.all(counts >= 4)


def test_apportion_rejects_too_few_nodes():
    """n below the total minimum cannot be split."""
    with pytest.raises(InvalidDomainError):
        apportion(7, [1.0, 1.0], 4)


def test_irregular_polygon_node_count():
    """Uneven edges still give exactly n nodes, and the offset rule one more per edge."""
    domain = make_domain("polygon:flat:0,0;3,0;3,0.1;0,1")
    assert len(boundary_nodes(domain, 50).z) == 50
    assert len(boundary_nodes(domain, 50, offset=True).z) == 54


def test_node_allocation_proportional_to_length():
    """The outer circle of an annulus gets twice the nodes of an inner circle half its size."""
    allocation = node_allocation(make_domain("annulus:flat:0.5:1.0"), 300)
    assert [k for _, k in allocation] == [200, 100]


def test_dilate_flat_domain():
    """Dilation scales center, radius and vertices."""
    disk = dilate(make_domain("disk:flat:1.0@1,0"), 2.0)
    assert disk.radius == pytest.approx(2.0)
    assert disk.center == pytest.approx((2.0, 0.0))
    square = dilate(make_domain("polygon:flat:0,0;1,0;1,1;0,1"), 3.0)
    assert area(square) == pytest.approx(9.0, rel=1e-12)


def test_dilate_needs_flat_metric(fs_unit_disk):
    """Only flat domains can be dilated."""
    with pytest.raises(ConfigError, match="flat"):
        dilate(fs_unit_disk, 2.0)


def _polygon_literal(metric: str, vertices: list[complex]) -> str:
    return f"polygon:{metric}:" + ";".join(f"{v.real:.17g},{v.imag:.17g}" for v in vertices)


@pytest.mark.parametrize("metric", ["flat", "fs", "hyperbolic"])
def test_rotation_leaves_polygon_measures_unchanged(metric):
    """Turning a polygon about the origin keeps its area and boundary length."""
    vertices = [0.1 + 0.05j, 0.6 + 0.1j, 0.4 + 0.5j, 0.05 + 0.3j]
    turned = [v * np.exp(1.1j) for v in vertices]
    base = make_domain(_polygon_literal(metric, vertices))
    rotated = make_domain(_polygon_literal(metric, turned))
    assert area(rotated) == pytest.approx(area(base), rel=1e-12)
    assert boundary_length(rotated) == pytest.approx(boundary_length(base), rel=1e-12)


def test_rotation_leaves_off_center_disk_unchanged():
    """An FS disk about 1 and its quarter turn about i have the same area and length."""
    base = make_domain("disk:fs:0.5@1,0")
    rotated = make_domain("disk:fs:0.5@0,1")
    assert area(rotated) == pytest.approx(area(base), rel=1e-12)
    assert boundary_length(rotated) == pytest.approx(boundary_length(base), rel=1e-12)
