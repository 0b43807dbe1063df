"""Level-set descriptions of moving fronts.

Orientation conventions used everywhere in this package:

* the front at time t is Gamma_t = {x : S(x, t) = 0},
* Omega^- = {S < 0} and Omega^+ = {S > 0},
* the unit normal nu = grad S / |grad S| points from Omega^- into Omega^+,
* the normal speed is G = -S_t / |grad S|, so the front velocity along the
  normal is U_delta = G nu.

A positive G moves the front toward Omega^+.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import (
    DegenerateGradientError,
    InvalidDimensionError,
    InvalidParameterError,
    StencilError,
)
from ..expressions import Expression, parse_expression

__all__ = [
    "LevelSetFront",
    "MovingPlaneFront",
    "MovingSphereFront",
    "ExpressionFront",
    "front_from_spec",
]


class LevelSetFront:
    """Front given by a scalar level-set function S(x, t).

    Parameters
    ----------
    s : callable
        S(x, t) with x a shape (dim,) array.
    dim : int
        Ambient dimension n >= 1.
    s_grad, s_t : callable, optional
        Analytic spatial gradient and time derivative. When omitted the
        front falls back to central differences with step ``fd_step *
        char_length`` (grad_mode "central-difference"), which costs two
        orders of accuracy in curvature queries.
    char_length : float
        Characteristic length used to scale tolerances and steps.
    """

    def __init__(
        self,
        s: Callable[[np.ndarray, float], float],
        dim: int,
        s_grad: Callable[[np.ndarray, float], np.ndarray] | None = None,
        s_t: Callable[[np.ndarray, float], float] | None = None,
        fd_step: float = 1e-6,
        char_length: float = 1.0,
    ):
        if dim < 1:
            raise InvalidDimensionError("dim must be >= 1")
        if char_length <= 0:
            raise InvalidParameterError("char_length must be positive")
        self._s = s
        self.dim = int(dim)
        self._s_grad = s_grad
        self._s_t = s_t
        self.fd_step = float(fd_step)
        self.char_length = float(char_length)
        self.grad_mode = "analytic" if s_grad is not None else "central-difference"

    # Basic evaluations -----------------------------------------------------

    def value(self, x: np.ndarray, t: float) -> float:
        try:
            return float(self._s(np.asarray(x, dtype=float), float(t)))
        except Exception as exc:  # noqa: BLE001
            raise StencilError(f"level-set evaluation failed at {x}, t={t}") from exc

    def grad(self, x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self._s_grad is not None:
            return np.asarray(self._s_grad(x, float(t)), dtype=float)
        h = self.fd_step * self.char_length
        g = np.empty(self.dim)
        for j in range(self.dim):
            step = np.zeros(self.dim)
            step[j] = h
            g[j] = (self.value(x + step, t) - self.value(x - step, t)) / (2.0 * h)
        return g

    def time_deriv(self, x: np.ndarray, t: float) -> float:
        if self._s_t is not None:
            return float(self._s_t(np.asarray(x, dtype=float), float(t)))
        h = self.fd_step
        return (self.value(x, t + h) - self.value(x, t - h)) / (2.0 * h)

    @property
    def tol_on_surface(self) -> float:
        return 1e-9 * self.char_length

    # Optional chart support -------------------------------------------------

    def patch_quadrature(self, t: float, level: int = 2):
        raise InvalidParameterError(
            "this front has no chart-based quadrature; use a plane or sphere front"
        )


class MovingPlaneFront(LevelSetFront):
    """Plane nu . x = offset(t), with Omega^- on the nu . x < offset side.

    ``offset`` may be a float (static), an (offset0, speed) pair, or a
    callable of t (then ``offset_rate`` supplies its derivative, or a
    central difference is used). The chart window is a box in tangential
    coordinates around ``window_center``.
    """

    def __init__(
        self,
        normal,
        offset,
        offset_rate: Callable[[float], float] | None = None,
        window_center=None,
        window_half_width: float = 3.0,
        char_length: float = 1.0,
    ):
        normal = np.asarray(normal, dtype=float)
        dim = normal.size
        nrm = np.linalg.norm(normal)
        if nrm == 0.0:
            raise InvalidParameterError("plane normal must be nonzero")
        self.normal_vector = normal / nrm

        if callable(offset):
            self._offset = offset
            self._offset_rate = offset_rate
        else:
            if np.ndim(offset) == 0:
                off0, speed = float(offset), 0.0
            else:
                off0, speed = (float(offset[0]), float(offset[1]))
            self._offset = lambda t: off0 + speed * t
            self._offset_rate = lambda t: speed

        super().__init__(
            s=lambda x, t: float(self.normal_vector @ x) - self._offset(t),
            dim=dim,
            s_grad=lambda x, t: self.normal_vector.copy(),
            s_t=lambda x, t: -self.offset_rate(t),
            char_length=char_length,
        )
        self.window_center = (
            np.zeros(dim) if window_center is None else np.asarray(window_center, float)
        )
        self.window_half_width = float(window_half_width)
        # Orthonormal tangential basis, columns of shape (dim, dim-1).
        basis = np.linalg.svd(self.normal_vector[None, :])[2][1:]
        self.tangent_basis = basis.T

    def offset(self, t: float) -> float:
        return float(self._offset(float(t)))

    def offset_rate(self, t: float) -> float:
        if self._offset_rate is not None:
            return float(self._offset_rate(float(t)))
        h = 1e-6
        return (self._offset(t + h) - self._offset(t - h)) / (2.0 * h)

    def point_on(self, t: float) -> np.ndarray:
        c = self.window_center
        return c + (self.offset(t) - float(self.normal_vector @ c)) * self.normal_vector

    def patch_quadrature(self, t: float, level: int = 2):
        from .quadrature import plane_chart

        return plane_chart(
            point=self.point_on(t),
            normal=self.normal_vector,
            half_widths=np.full(self.dim - 1, self.window_half_width),
            t=t,
            level=level,
            tangent_basis=self.tangent_basis,
        )


class MovingSphereFront(LevelSetFront):
    """Sphere |x - center| = R(t).

    orientation "outward": S = |x - c| - R(t), nu points away from the
    center, G = Rdot(t). orientation "inward": S = R(t) - |x - c|, nu points
    toward the center, G = -Rdot(t). Mean curvature is -(n-1)/(2R) for the
    outward orientation and +(n-1)/(2R) for the inward one.
    """

    def __init__(
        self,
        center,
        radius,
        radius_rate: Callable[[float], float] | None = None,
        orientation: str = "outward",
    ):
        center = np.asarray(center, dtype=float)
        dim = center.size
        if orientation not in ("outward", "inward"):
            raise InvalidParameterError("orientation must be 'outward' or 'inward'")
        self.center = center
        self.orientation = orientation
        if callable(radius):
            self._radius = radius
            self._radius_rate = radius_rate
        else:
            r0 = float(radius)
            self._radius = lambda t: r0
            self._radius_rate = lambda t: 0.0
        sign = 1.0 if orientation == "outward" else -1.0

        def s(x, t):
            return sign * (float(np.linalg.norm(x - center)) - self._radius(t))

        def s_grad(x, t):
            d = x - center
            r = float(np.linalg.norm(d))
            if r == 0.0:
                raise DegenerateGradientError("sphere level set is singular at the center")
            return sign * d / r

        def s_t(x, t):
            return -sign * self.radius_rate(t)

        super().__init__(s, dim, s_grad=s_grad, s_t=s_t, char_length=max(self.radius(0.0), 1e-6))

    def radius(self, t: float) -> float:
        r = float(self._radius(float(t)))
        if r <= 0.0:
            raise InvalidParameterError(f"sphere radius must stay positive, got {r} at t={t}")
        return r

    def radius_rate(self, t: float) -> float:
        if self._radius_rate is not None:
            return float(self._radius_rate(float(t)))
        h = 1e-6
        return (self._radius(t + h) - self._radius(t - h)) / (2.0 * h)

    def patch_quadrature(self, t: float, level: int = 2):
        from .quadrature import sphere_chart

        return sphere_chart(self.center, self.radius(t), t=t, level=level)


class ExpressionFront(LevelSetFront):
    """Front parsed from a level-set expression in x1..xn, |x| and t."""

    def __init__(self, source: str, dim: int, char_length: float = 1.0):
        allowed = {"t", "x", "r"} | {f"x{k + 1}" for k in range(dim)}
        expr = parse_expression(source, allowed=allowed)
        self.expression: Expression = expr
        super().__init__(
            s=lambda x, t: expr.eval_point(x, t),
            dim=dim,
            char_length=char_length,
        )


def front_from_spec(spec: dict) -> LevelSetFront:
    """Build a front from its scenario-file description."""
    kind = spec.get("kind")
    if kind == "plane":
        offset = spec.get("offset", 0.0)
        if isinstance(offset, str):
            expr = parse_expression(offset, allowed={"t"})
            return MovingPlaneFront(spec["normal"], lambda t: expr(t=t))
        return MovingPlaneFront(spec["normal"], offset)
    if kind == "sphere":
        radius = spec["radius"]
        if isinstance(radius, str):
            expr = parse_expression(radius, allowed={"t"})
            radius = lambda t: expr(t=t)  # noqa: E731
        return MovingSphereFront(
            spec["center"], radius, orientation=spec.get("orientation", "outward")
        )
    if kind == "level_set_expr":
        return ExpressionFront(spec["expr"], int(spec["dim"]))
    raise InvalidParameterError(f"unknown front kind {kind!r}")
