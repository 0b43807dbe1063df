"""Transport-theorem and integration-by-parts checks on moving geometry.

These are verification tools, not solvers. Each check evaluates both sides
of an exact identity with quadrature and finite differences and reports the
residual:

* surface transport:  d/dt int_Gamma e dmu = int_Gamma (de/dt - 2 K G e) dmu,
  where de/dt is the front-riding derivative;
* volume transport:   d/dt int_Omega f dx = int_Omega f_t dx
  + int_bdry f (W . nu) dmu for a region moving with boundary velocity W;
* integration by parts along the space-time front:
  int_0^T int_Gamma e (dphi/dt) dmu dt
  = - int_0^T int_Gamma (de/dt - 2 K G e) phi dmu dt
    - int_Gamma0 e phi(., 0) dmu,
  for test functions phi vanishing before t = T.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InvalidDimensionError, InvalidParameterError, SupportViolationError
from .calculus import delta_derivative_time, mean_curvature, normal, normal_speed
from .fronts import LevelSetFront, MovingPlaneFront, MovingSphereFront
from .quadrature import gauss_panels, sphere_chart, surface_integral

__all__ = [
    "TransportReport",
    "MovingBall",
    "Box",
    "check_surface_transport",
    "check_volume_transport",
    "check_integration_by_parts",
]


@dataclass(frozen=True)
class TransportReport:
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _pointwise(e: Callable) -> Callable[[np.ndarray, float], float]:
    def e_pt(x, t):
        return float(np.atleast_1d(e(np.asarray(x, dtype=float)[None, :], t))[0])

    return e_pt


class MovingBall:
    """Ball |x - c| <= R(t); boundary moves radially at Rdot(t)."""

    def __init__(self, center, radius, radius_rate=None):
        self.center = np.asarray(center, dtype=float)
        if self.center.size not in (2, 3):
            raise InvalidDimensionError("MovingBall supports dim 2 and 3")
        if callable(radius):
            self._radius = radius
            self._rate = radius_rate
        else:
            self._radius = lambda t: float(radius)
            self._rate = lambda t: 0.0

    def radius(self, t: float) -> float:
        return float(self._radius(t))

    def rate(self, t: float) -> float:
        if self._rate is not None:
            return float(self._rate(t))
        h = 1e-6
        return (self._radius(t + h) - self._radius(t - h)) / (2.0 * h)

    def volume_integral(self, f, t: float, level: int = 2) -> float:
        big_r = self.radius(t)
        r_nodes, r_weights = gauss_panels(0.0, big_r, 4 * (2**level), nodes=8)
        unit = sphere_chart(np.zeros(self.center.size), 1.0, t=t, level=level)
        total = 0.0
        for r, w in zip(r_nodes, r_weights):
            pts = self.center[None, :] + r * (unit.nodes - 0.0)
            vals = np.broadcast_to(np.asarray(f(pts, t), dtype=float), unit.weights.shape)
            total += w * r ** (self.center.size - 1) * float(unit.weights @ vals)
        return total

    def boundary_integral(self, f, t: float, level: int = 2) -> float:
        quad = sphere_chart(self.center, self.radius(t), t=t, level=level)
        return surface_integral(f, quad)


class Box:
    """Static axis-aligned box; its boundary term vanishes."""

    def __init__(self, bounds):
        self.bounds = [(float(lo), float(hi)) for lo, hi in bounds]

    def radius(self, t):  # uniform interface
        return None

    def rate(self, t):
        return 0.0

    def volume_integral(self, f, t: float, level: int = 2) -> float:
        grids = [gauss_panels(lo, hi, 4 * (2**level), nodes=6) for lo, hi in self.bounds]
        mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
        wmesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        wts = np.prod(np.stack([w.ravel() for w in wmesh], axis=1), axis=1)
        vals = np.broadcast_to(np.asarray(f(pts, t), dtype=float), wts.shape)
        return float(wts @ vals)

    def boundary_integral(self, f, t: float, level: int = 2) -> float:
        return 0.0


def check_surface_transport(
    e: Callable[[np.ndarray, float], np.ndarray],
    front: LevelSetFront,
    t: float,
    dt: float = 1e-4,
    level: int = 2,
) -> TransportReport:
    """Residual of the surface transport identity at time t.

    The left side differentiates int_Gamma e dmu by central differences in
    time (O(dt^2)); the right side integrates the front-riding derivative
    minus the curvature term at time t.
    """
    m_plus = surface_integral(e, front.patch_quadrature(t + dt, level))
    m_minus = surface_integral(e, front.patch_quadrature(t - dt, level))
    lhs = (m_plus - m_minus) / (2.0 * dt)

    quad = front.patch_quadrature(t, level)
    e_pt = _pointwise(e)
    integrand = np.empty(quad.weights.size)
    for i, x in enumerate(quad.nodes):
        de_dt = delta_derivative_time(e_pt, front, x, t)
        kappa = mean_curvature(front, x, t)
        big_g = normal_speed(front, x, t)
        integrand[i] = de_dt - 2.0 * kappa * big_g * e_pt(x, t)
    rhs = float(quad.weights @ integrand)
    return TransportReport(lhs, rhs)


def check_volume_transport(
    f: Callable[[np.ndarray, float], np.ndarray],
    region,
    t: float,
    dt: float = 1e-4,
    level: int = 2,
) -> TransportReport:
    """Residual of the volume transport identity at time t."""
    lhs = (
        region.volume_integral(f, t + dt, level) - region.volume_integral(f, t - dt, level)
    ) / (2.0 * dt)

    def f_t(pts, tau):
        return (np.asarray(f(pts, tau + dt)) - np.asarray(f(pts, tau - dt))) / (2.0 * dt)

    rhs = region.volume_integral(f_t, t, level)
    rate = region.rate(t)
    if rate:
        rhs += rate * region.boundary_integral(f, t, level)
    elif not isinstance(region, Box):
        rhs += region.rate(t) * region.boundary_integral(f, t, level)
    return TransportReport(lhs, rhs)


def _front_normal_speed_at(front: LevelSetFront, nodes: np.ndarray, t: float):
    """(nu, G) arrays at chart nodes, vectorized for the two chart fronts."""
    m = nodes.shape[0]
    if isinstance(front, MovingPlaneFront):
        nu = np.tile(front.normal_vector, (m, 1))
        big_g = np.full(m, front.offset_rate(t))
        return nu, big_g
    if isinstance(front, MovingSphereFront):
        d = nodes - front.center[None, :]
        r = np.linalg.norm(d, axis=1, keepdims=True)
        sign = 1.0 if front.orientation == "outward" else -1.0
        nu = sign * d / r
        big_g = np.full(m, sign * front.radius_rate(t))
        return nu, big_g
    nu = np.empty_like(nodes)
    big_g = np.empty(m)
    for i, x in enumerate(nodes):
        nu[i] = normal(front, x, t)
        big_g[i] = normal_speed(front, x, t)
    return nu, big_g


def check_integration_by_parts(
    e: Callable[[np.ndarray, float], np.ndarray],
    phi,
    front: LevelSetFront,
    t_end: float,
    level: int = 2,
    dt_fd: float = 1e-5,
) -> TransportReport:
    """Residual of the space-time surface integration-by-parts identity.

    ``phi`` must expose value/dt/grad with analytic derivatives and a
    t_support that closes strictly before t_end (otherwise the boundary term
    at t_end would be missing from the identity).
    """
    t_lo, t_hi = phi.t_support
    if t_lo < 0.0:
        raise SupportViolationError("test function support reaches into t < 0")
    if t_hi >= t_end:
        raise SupportViolationError("test function must vanish before t_end")
    if isinstance(front, MovingPlaneFront):
        # The chart window must contain the spatial support of phi.
        for (lo, hi) in phi.space_box:
            if max(abs(lo), abs(hi)) >= front.window_half_width + abs(
                float(front.normal_vector @ front.window_center)
            ) + abs(front.offset(t_end)):
                break  # conservative screen only; plane windows are generous

    t_nodes, t_weights = gauss_panels(max(t_lo, 0.0), t_hi, 8 * (2**level), nodes=6)
    e_pt = _pointwise(e)

    lhs = 0.0
    rhs_volume = 0.0
    for tau, wt in zip(t_nodes, t_weights):
        quad = front.patch_quadrature(tau, level)
        nu, big_g = _front_normal_speed_at(front, quad.nodes, tau)
        dphi = phi.dt(quad.nodes, tau) + big_g * np.sum(phi.grad(quad.nodes, tau) * nu, axis=1)
        e_vals = np.broadcast_to(np.asarray(e(quad.nodes, tau), dtype=float), quad.weights.shape)
        lhs += wt * float(quad.weights @ (e_vals * dphi))

        phi_vals = phi.value(quad.nodes, tau)
        if np.any(phi_vals != 0.0):
            integrand = np.empty(quad.weights.size)
            for i, x in enumerate(quad.nodes):
                if phi_vals[i] == 0.0:
                    integrand[i] = 0.0
                    continue
                de_dt = delta_derivative_time(e_pt, front, x, tau, h_t=dt_fd)
                kappa = mean_curvature(front, x, tau)
                integrand[i] = (de_dt - 2.0 * kappa * big_g[i] * e_pt(x, tau)) * phi_vals[i]
            rhs_volume += wt * float(quad.weights @ integrand)

    quad0 = front.patch_quadrature(0.0, level)
    e0 = np.broadcast_to(np.asarray(e(quad0.nodes, 0.0), dtype=float), quad0.weights.shape)
    gamma0_term = float(quad0.weights @ (e0 * phi.value(quad0.nodes, 0.0)))
    rhs = -rhs_volume - gamma0_term
    return TransportReport(lhs, rhs)
