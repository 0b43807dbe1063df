"""Surface patch quadratures on charts.

Charts and their accuracy:

* circles (n=2): trapezoid rule in angle, spectrally accurate for smooth
  periodic integrands;
* spheres (n=3): product of Gauss-Legendre in cos(theta) and trapezoid in
  azimuth, exact for polynomials well past degree 6 at the default level;
* planes and graphs: composite Gauss-Legendre panels per tangential
  direction (order 2m for m nodes per panel).

Node weights always sum to the patch measure, which tests validate against
closed-form sphere areas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import EmptyQuadratureError, InvalidDimensionError, InvalidParameterError

__all__ = [
    "SurfacePatchQuadrature",
    "gauss_panels",
    "circle_chart",
    "sphere_chart",
    "plane_chart",
    "graph_chart",
    "surface_integral",
]


@dataclass(frozen=True)
class SurfacePatchQuadrature:
    """Nodes and weights for integration over one surface patch at time t."""

    nodes: np.ndarray  # (m, dim)
    weights: np.ndarray  # (m,)
    t: float
    chart: str
    meta: dict = field(default_factory=dict)

    def measure(self) -> float:
        return float(np.sum(self.weights))


def gauss_panels(a: float, b: float, panels: int, nodes: int = 6):
    """Composite Gauss-Legendre rule on [a, b]; returns (points, weights)."""
    if b < a:
        raise InvalidParameterError("interval is reversed")
    if panels < 1 or nodes < 1:
        raise InvalidParameterError("panels and nodes must be positive")
    xi, wi = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mids[:, None] + half[:, None] * xi[None, :]).ravel()
    wts = (half[:, None] * wi[None, :]).ravel()
    return pts, wts


def circle_chart(center, radius: float, t: float = 0.0, level: int = 2) -> SurfacePatchQuadrature:
    """Full circle in the plane, trapezoid rule with 16 * 2^level nodes."""
    center = np.asarray(center, dtype=float)
    if center.size != 2:
        raise InvalidDimensionError("circle chart requires dim 2")
    m = 16 * (2**level)
    theta = 2.0 * np.pi * np.arange(m) / m
    nodes = center[None, :] + radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    weights = np.full(m, 2.0 * np.pi * radius / m)
    return SurfacePatchQuadrature(nodes, weights, float(t), "circle", {"radius": radius})


def sphere_chart(center, radius: float, t: float = 0.0, level: int = 2) -> SurfacePatchQuadrature:
    """Full sphere; dispatches on the dimension of ``center``.

    n=3 uses Gauss-Legendre x trapezoid with 6*2^level polar nodes, n=2
    falls back to the circle chart, n=1 is the two-point "sphere".
    """
    center = np.asarray(center, dtype=float)
    if radius <= 0:
        raise InvalidParameterError("radius must be positive")
    if center.size == 1:
        nodes = np.array([[center[0] - radius], [center[0] + radius]])
        return SurfacePatchQuadrature(nodes, np.ones(2), float(t), "pair", {"radius": radius})
    if center.size == 2:
        return circle_chart(center, radius, t, level)
    if center.size != 3:
        raise InvalidDimensionError("sphere charts support dim 1, 2 and 3")
    n_polar = 6 * (2**level)
    n_az = 2 * n_polar
    z, wz = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * np.pi * np.arange(n_az) / n_az
    sin_theta = np.sqrt(1.0 - z**2)
    xs = np.outer(sin_theta, np.cos(phi)).ravel()
    ys = np.outer(sin_theta, np.sin(phi)).ravel()
    zs = np.repeat(z, n_az)
    nodes = center[None, :] + radius * np.stack([xs, ys, zs], axis=1)
    weights = np.repeat(wz, n_az) * (2.0 * np.pi / n_az) * radius**2
    return SurfacePatchQuadrature(nodes, weights, float(t), "sphere", {"radius": radius})


def _tangent_basis(normal: np.ndarray) -> np.ndarray:
    basis = np.linalg.svd(normal[None, :])[2][1:]
    return basis.T  # (dim, dim-1)


def plane_chart(
    point,
    normal,
    half_widths,
    t: float = 0.0,
    level: int = 2,
    nodes: int = 6,
    tangent_basis: np.ndarray | None = None,
) -> SurfacePatchQuadrature:
    """Rectangular window on a hyperplane through ``point`` with unit ``normal``."""
    point = np.asarray(point, dtype=float)
    normal = np.asarray(normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    half_widths = np.atleast_1d(np.asarray(half_widths, dtype=float))
    dim = point.size
    if half_widths.size != dim - 1:
        raise InvalidParameterError("need one half width per tangential direction")
    if dim == 1:
        return SurfacePatchQuadrature(point[None, :], np.ones(1), float(t), "plane", {})
    basis = _tangent_basis(normal) if tangent_basis is None else tangent_basis
    panels = 4 * (2**level)
    grids = [gauss_panels(-hw, hw, panels, nodes) for hw in half_widths]
    mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
    wmesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
    coords = np.stack([m.ravel() for m in mesh], axis=1)  # (m, dim-1)
    weights = np.prod(np.stack([w.ravel() for w in wmesh], axis=1), axis=1)
    nodes_xyz = point[None, :] + coords @ basis.T
    return SurfacePatchQuadrature(nodes_xyz, weights, float(t), "plane", {"normal": normal})


def graph_chart(
    height: Callable[[np.ndarray], float],
    window,
    t: float = 0.0,
    level: int = 2,
    nodes: int = 6,
    grad_height: Callable[[np.ndarray], np.ndarray] | None = None,
    h_fd: float = 1e-6,
) -> SurfacePatchQuadrature:
    """Graph patch x_n = height(x_tan) over a tangential box ``window``.

    ``window`` is a list of (lo, hi) pairs, one per tangential coordinate.
    The area element sqrt(1 + |grad h|^2) uses the analytic gradient when
    given, otherwise central differences.
    """
    window = [(float(lo), float(hi)) for lo, hi in window]
    k = len(window)
    panels = 4 * (2**level)
    grids = [gauss_panels(lo, hi, panels, nodes) for lo, hi in window]
    mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
    wmesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
    coords = np.stack([m.ravel() for m in mesh], axis=1)  # (m, k)
    base_w = np.prod(np.stack([w.ravel() for w in wmesh], axis=1), axis=1)

    m = coords.shape[0]
    nodes_xyz = np.empty((m, k + 1))
    weights = np.empty(m)
    for i in range(m):
        xi = coords[i]
        nodes_xyz[i, :k] = xi
        nodes_xyz[i, k] = height(xi)
        if grad_height is not None:
            gh = np.asarray(grad_height(xi), dtype=float)
        else:
            gh = np.empty(k)
            for j in range(k):
                step = np.zeros(k)
                step[j] = h_fd
                gh[j] = (height(xi + step) - height(xi - step)) / (2.0 * h_fd)
        weights[i] = base_w[i] * np.sqrt(1.0 + float(gh @ gh))
    return SurfacePatchQuadrature(nodes_xyz, weights, float(t), "graph", {})


def surface_integral(f: Callable[[np.ndarray, float], np.ndarray], quad: SurfacePatchQuadrature) -> float:
    """Integrate a surface field over the patch.

    ``f`` must accept (nodes, t) with nodes of shape (m, dim) and return m
    values (constants are broadcast).
    """
    if quad.nodes.shape[0] == 0:
        raise EmptyQuadratureError("quadrature has no nodes")
    values = np.broadcast_to(np.asarray(f(quad.nodes, quad.t), dtype=float), quad.weights.shape)
    return float(np.dot(quad.weights, values))
