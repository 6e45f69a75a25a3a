"""Domains in the affine chart: area, boundary length, membership and boundary nodes."""

import logging
import math
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any, NamedTuple

import numpy as np

from ..errors import ConfigError, InvalidDomainError
from ..models import Containment, Domain, GeometryKind, GeometryModel, ShapeKind

logger = logging.getLogger(__name__)

MIN_CORNER_ANGLE = 1e-3
MIN_BOUNDARY_NODES = 16
MIN_CURVE_NODES = 4
CIRCLE_TRAPEZOID_NODES = 2048
GAUSS_ORDER = 16


class BoundaryNodes(NamedTuple):
    """Quadrature nodes on ∂U: positions, conj(dz/ds) and arc-length weights."""

    z: np.ndarray
    dzbar_ds: np.ndarray
    weight: np.ndarray


@lru_cache(maxsize=32)
def _gauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def apportion(n: int, lengths: Any, minimum: int) -> np.ndarray:
    """Split n nodes over pieces in proportion to their lengths, exactly.

    Largest-remainder rounding, then pieces below ``minimum`` are topped up
    from the largest shares.

    Raises:
        InvalidDomainError: n cannot give every piece ``minimum`` nodes.
    """
    lengths = np.asarray(lengths, dtype=float)
    if n < minimum * len(lengths):
        raise InvalidDomainError(
            f"{n} nodes cannot give {len(lengths)} boundary pieces {minimum} each"
        )
    share = n * lengths / float(np.sum(lengths))
    counts = np.floor(share).astype(int)
    order = np.argsort(-(share - counts), kind="stable")
    counts[order[: n - int(np.sum(counts))]] += 1
    while np.any(counts < minimum):
        counts[int(np.argmin(counts))] += 1
        counts[int(np.argmax(counts))] -= 1
    return counts


def metric_density(geometry: GeometryModel, z: Any) -> np.ndarray:
    """ρ(z) with ω = ρ dx dy."""
    return geometry.density(z)


def _green_factor(geometry: GeometryModel, u: np.ndarray) -> np.ndarray:
    """f(|z|²) with d[f(|z|²)(x dy − y dx)] = ω."""
    if geometry.kind == GeometryKind.FUBINI_STUDY:
        return geometry.scale / (2.0 * (1.0 + u))
    if geometry.kind == GeometryKind.HYPERBOLIC:
        return geometry.scale / (2.0 * (1.0 - u))
    return np.full(np.shape(u), 0.5 * geometry.scale)


class BoundaryCurve(ABC):
    """Closed, piecewise C¹ curve parameterized by chart arc length."""

    def __init__(self, sign: int = 1) -> None:
        self.sign = sign

    @property
    @abstractmethod
    def length(self) -> float:
        """Chart (Euclidean) length."""

    @abstractmethod
    def point(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Position and unit tangent dz/ds at arc-length parameters s (taken mod length)."""

    @abstractmethod
    def node_params(self, n: int, offset: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """Parameters and weights of an open rule with n nodes.

        A polygon's offset rule carries one node more per edge.
        """

    def nodes(self, n: int, offset: bool = False) -> BoundaryNodes:
        """Open quadrature rule with n nodes."""
        s, weight = self.node_params(n, offset)
        z, tangent = self.point(s)
        return BoundaryNodes(z, np.conj(tangent), weight)

    @abstractmethod
    def path(self, n: int) -> np.ndarray:
        """Closed polygonal sampling of the curve with at least n points, corners included."""

    @abstractmethod
    def line_integrals(self, geometry: GeometryModel) -> tuple[float, float]:
        """(∮ f(|z|²)(x dy − y dx), ∮ √ρ |dz|) for this curve and orientation."""


class CircleCurve(BoundaryCurve):
    """Circle |z − c| = r, counterclockwise when sign = +1."""

    def __init__(self, center: complex, radius: float, sign: int = 1) -> None:
        super().__init__(sign)
        self.center = center
        self.radius = radius

    @property
    def length(self) -> float:
        return 2.0 * math.pi * self.radius

    def point(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        theta = self.sign * np.asarray(s, dtype=float) / self.radius
        e = np.exp(1j * theta)
        return self.center + self.radius * e, self.sign * 1j * e

    def node_params(self, n: int, offset: bool = False) -> tuple[np.ndarray, np.ndarray]:
        s = (np.arange(n) + (0.5 if offset else 0.0)) * (self.length / n)
        return s, np.full(n, self.length / n)

    def path(self, n: int) -> np.ndarray:
        return self.point(np.arange(n) * (self.length / n))[0]

    def line_integrals(self, geometry: GeometryModel) -> tuple[float, float]:
        if self.center == 0:
            u = self.radius**2
            rho = float(metric_density(geometry, complex(self.radius)))
            area = 2.0 * math.pi * u * float(_green_factor(geometry, np.asarray(u)))
            return self.sign * area, self.length * math.sqrt(rho)
        z, tangent = self.point(
            np.arange(CIRCLE_TRAPEZOID_NODES) * (self.length / CIRCLE_TRAPEZOID_NODES)
        )
        ds = self.length / CIRCLE_TRAPEZOID_NODES
        u = np.abs(z) ** 2
        cross = (np.conj(z) * tangent).imag
        area = float(np.sum(_green_factor(geometry, u) * cross) * ds)
        length = float(np.sum(np.sqrt(metric_density(geometry, z))) * ds)
        return area, length


class PolylineCurve(BoundaryCurve):
    """Closed polygon through the given vertices, in the order given."""

    def __init__(self, vertices: np.ndarray, sign: int = 1) -> None:
        super().__init__(sign)
        self.vertices = vertices if sign > 0 else vertices[::-1].copy()
        self._ends = np.roll(self.vertices, -1)
        self._edges = self._ends - self.vertices
        self._edge_lengths = np.abs(self._edges)
        self._starts = np.concatenate([[0.0], np.cumsum(self._edge_lengths)[:-1]])

    @property
    def length(self) -> float:
        return float(np.sum(self._edge_lengths))

    def point(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.mod(np.asarray(s, dtype=float), self.length)
        k = np.clip(np.searchsorted(self._starts, s, side="right") - 1, 0, len(self.vertices) - 1)
        tangent = self._edges[k] / self._edge_lengths[k]
        return self.vertices[k] + (s - self._starts[k]) * tangent, tangent

    def _edge_counts(self, n: int) -> np.ndarray:
        return np.ceil(n * self._edge_lengths / self.length - 1e-9).astype(int).clip(min=1)

    def node_params(self, n: int, offset: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """Gauss–Legendre rule per edge with exactly n nodes in total.

        The offset rule uses one point more per edge; Legendre roots of
        consecutive orders interlace, so the two rules never share a node.
        """
        params, weights = [], []
        counts = apportion(n, self._edge_lengths, 1)
        for s0, length, k in zip(self._starts, self._edge_lengths, counts):
            x, w = _gauss(int(k) + (1 if offset else 0))
            params.append(s0 + 0.5 * length * (x + 1.0))
            weights.append(0.5 * length * w)
        return np.concatenate(params), np.concatenate(weights)

    def path(self, n: int) -> np.ndarray:
        pieces = []
        for start, edge, k in zip(self.vertices, self._edges, self._edge_counts(n)):
            pieces.append(start + (np.arange(k) / k) * edge)
        return np.concatenate(pieces)

    def line_integrals(self, geometry: GeometryModel) -> tuple[float, float]:
        x, w = _gauss(GAUSS_ORDER)
        area = length = 0.0
        for start, edge, edge_length in zip(self.vertices, self._edges, self._edge_lengths):
            panels = 4
            for p in range(panels):
                t = (p + 0.5 * (x + 1.0)) / panels
                wt = 0.5 * w / panels
                z = start + t * edge
                cross = (np.conj(z) * edge).imag
                area += float(np.sum(wt * _green_factor(geometry, np.abs(z) ** 2) * cross))
                length += float(
                    np.sum(wt * np.sqrt(metric_density(geometry, z))) * edge_length
                )
        return area, length


def polygon_vertices(domain: Domain) -> np.ndarray:
    """Polygon vertices as a counterclockwise complex array."""
    v = np.array([complex(x, y) for x, y in domain.vertices or []])
    signed = 0.5 * np.sum((np.conj(v) * np.roll(v, -1)).imag)
    return v if signed > 0 else v[::-1].copy()


def _segments_cross(a: complex, b: complex, c: complex, d: complex) -> bool:
    def orient(p: complex, q: complex, r: complex) -> float:
        return ((q - p).conjugate() * (r - p)).imag

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    for p, q, r, o in ((a, b, c, o1), (a, b, d, o2), (c, d, a, o3), (c, d, b, o4)):
        if o == 0 and min(p.real, q.real) <= r.real <= max(p.real, q.real) and min(
            p.imag, q.imag
        ) <= r.imag <= max(p.imag, q.imag):
            return True
    return False


def validate_domain(domain: Domain) -> None:
    """Check the geometric constraints a Domain model cannot express on its own.

    Raises:
        InvalidDomainError: Self-intersecting or cusped polygon, an empty
            complement, or a hyperbolic domain whose closure leaves the unit disk.
    """
    if domain.complement and domain.shape == ShapeKind.DISK and math.isinf(domain.radius or 0):
        raise InvalidDomainError("the complement of the whole sphere is empty")
    if domain.shape == ShapeKind.POLYGON:
        v = polygon_vertices(domain)
        n = len(v)
        edges = np.roll(v, -1) - v
        if np.any(np.abs(edges) == 0):
            raise InvalidDomainError("polygon has repeated consecutive vertices")
        for i in range(n):
            incoming, outgoing = -edges[i - 1], edges[i]
            angle = abs(math.atan2((incoming.conjugate() * outgoing).imag,
                                   (incoming.conjugate() * outgoing).real))
            if angle < MIN_CORNER_ANGLE:
                raise InvalidDomainError(f"polygon has a cusp at vertex {i}")
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                    raise InvalidDomainError(f"polygon edges {i} and {j} intersect")
    if domain.geometry.kind == GeometryKind.HYPERBOLIC and chart_radius(domain) >= 1.0:
        raise InvalidDomainError("hyperbolic domain closure must lie inside the unit disk")


def chart_radius(domain: Domain) -> float:
    """Bound on |z| over the closure of U (infinite when U contains ∞)."""
    if domain.complement or domain.is_full_sphere:
        return math.inf
    c = abs(domain.center_z)
    if domain.shape == ShapeKind.DISK:
        return c + float(domain.radius or 0.0)
    if domain.shape == ShapeKind.ANNULUS:
        return c + float(domain.r_out or 0.0)
    return float(np.max(np.abs(polygon_vertices(domain))))


def domain_scale(domain: Domain) -> float:
    """Characteristic chart size used to scale tolerances."""
    if domain.is_full_sphere:
        return 1.0
    if domain.shape == ShapeKind.DISK:
        return float(domain.radius or 1.0)
    if domain.shape == ShapeKind.ANNULUS:
        return float(domain.r_out or 1.0)
    v = polygon_vertices(domain)
    return float(np.max(np.abs(v - v.mean())))


def boundary_components(domain: Domain) -> list[BoundaryCurve]:
    """Positively oriented boundary curves of U (empty for the whole sphere)."""
    validate_domain(domain)
    if domain.is_full_sphere:
        return []
    sign = -1 if domain.complement else 1
    if domain.shape == ShapeKind.DISK:
        return [CircleCurve(domain.center_z, float(domain.radius or 0.0), sign)]
    if domain.shape == ShapeKind.ANNULUS:
        return [
            CircleCurve(domain.center_z, float(domain.r_out or 0.0), sign),
            CircleCurve(domain.center_z, float(domain.r_in or 0.0), -sign),
        ]
    return [PolylineCurve(polygon_vertices(domain), sign)]


def area(domain: Domain) -> float:
    """ω-area of U by Green's theorem on the closed-form metric potential.

    Raises:
        InvalidDomainError: The domain fails validation.
    """
    validate_domain(domain)
    total = math.pi * domain.geometry.scale
    if domain.is_full_sphere:
        return total
    shape = domain.model_copy(update={"complement": False})
    value = sum(curve.line_integrals(domain.geometry)[0] for curve in boundary_components(shape))
    return total - value if domain.complement else value


def boundary_length(domain: Domain) -> float:
    """Length of ∂U in the Riemannian metric of ω.

    Raises:
        InvalidDomainError: The domain fails validation.
    """
    return float(
        sum(curve.line_integrals(domain.geometry)[1] for curve in boundary_components(domain))
    )


def chart_perimeter(domain: Domain) -> float:
    """Euclidean length of ∂U in the chart."""
    return float(sum(curve.length for curve in boundary_components(domain)))


def classify_points(domain: Domain, z: np.ndarray, tol: float) -> np.ndarray:
    """Vectorized membership: +1 inside, −1 outside, 0 within tol of ∂U."""
    z = np.asarray(z, dtype=complex)
    if domain.is_full_sphere:
        return np.ones(z.shape, dtype=int)
    c = domain.center_z
    if domain.shape == ShapeKind.DISK:
        d = np.abs(z - c)
        r = float(domain.radius or 0.0)
        inside, dist = d < r, np.abs(d - r)
    elif domain.shape == ShapeKind.ANNULUS:
        d = np.abs(z - c)
        r_in, r_out = float(domain.r_in or 0.0), float(domain.r_out or 0.0)
        inside = (d > r_in) & (d < r_out)
        dist = np.minimum(np.abs(d - r_in), np.abs(d - r_out))
    else:
        v = polygon_vertices(domain)
        a, b = v[None, :], np.roll(v, -1)[None, :]
        p = z.reshape(-1)[:, None]
        ab = b - a
        t = np.clip(((p - a) * np.conj(ab)).real / np.abs(ab) ** 2, 0.0, 1.0)
        dist = np.min(np.abs(p - (a + t * ab)), axis=1).reshape(z.shape)
        # Even-odd ray casting toward +x.
        crosses = ((a.imag > p.imag) != (b.imag > p.imag)) & (
            p.real < a.real + (p.imag - a.imag) * ab.real / np.where(ab.imag == 0, 1, ab.imag)
        )
        inside = (np.sum(crosses, axis=1) % 2 == 1).reshape(z.shape)
    code = np.where(inside, 1, -1)
    if domain.complement:
        code = -code
    return np.where(dist < tol, 0, code)


def contains(domain: Domain, z: complex, tol: float) -> Containment:
    """Classify a chart point as inside, outside or on the boundary band of U.

    Args:
        domain: The region.
        z: Chart point.
        tol: Boundary band half-width in chart distance.

    Returns:
        BOUNDARY iff the chart distance from z to ∂U is below tol.
    """
    code = int(classify_points(domain, np.asarray([z]), tol)[0])
    return {1: Containment.INSIDE, -1: Containment.OUTSIDE, 0: Containment.BOUNDARY}[code]


def boundary_nodes(domain: Domain, n: int, offset: bool = False) -> BoundaryNodes:
    """Open quadrature rule on ∂U with weights summing to the chart perimeter.

    Nodes are shared among boundary components in proportion to their length.
    Polygon corners are never nodes; with ``offset`` the node set is shifted
    so that it never meets the unshifted one.

    Args:
        domain: The region.
        n: Node count (at least 16).
        offset: Return the half-spacing shifted rule.

    Returns:
        Node positions, conj(dz/ds) and arc-length weights.

    Raises:
        InvalidDomainError: n below 16.
    """
    parts = [curve.nodes(k, offset) for curve, k in node_allocation(domain, n)]
    if not parts:
        empty = np.zeros(0, dtype=complex)
        return BoundaryNodes(empty, empty, np.zeros(0))
    return BoundaryNodes(
        np.concatenate([p.z for p in parts]),
        np.concatenate([p.dzbar_ds for p in parts]),
        np.concatenate([p.weight for p in parts]),
    )


def node_allocation(domain: Domain, n: int) -> list[tuple[BoundaryCurve, int]]:
    """Boundary curves of U with their share of n nodes, proportional to chart length.

    The shares add up to n exactly, with at least 4 nodes per curve.

    Raises:
        InvalidDomainError: n below 16.
    """
    if n < MIN_BOUNDARY_NODES:
        raise InvalidDomainError(f"need at least {MIN_BOUNDARY_NODES} boundary nodes, got {n}")
    curves = boundary_components(domain)
    if not curves:
        return []
    counts = apportion(n, [curve.length for curve in curves], MIN_CURVE_NODES)
    return [(curve, int(k)) for curve, k in zip(curves, counts)]


def dilate(domain: Domain, factor: float) -> Domain:
    """The flat domain factor·U, center and vertices included.

    Raises:
        ConfigError: The domain is not under the flat metric.
    """
    if domain.geometry.kind != GeometryKind.FLAT:
        raise ConfigError("only flat domains can be dilated")
    update: dict[str, Any] = {"center": (factor * domain.center[0], factor * domain.center[1])}
    for key in ("radius", "r_in", "r_out"):
        value = getattr(domain, key)
        if value is not None:
            update[key] = factor * value
    if domain.vertices is not None:
        update["vertices"] = [(factor * x, factor * y) for x, y in domain.vertices]
    return Domain.model_validate({**domain.model_dump(), **update})
