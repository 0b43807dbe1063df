"""Differential operators on and along a moving front.

For a quantity f defined near Gamma_t (a level-set extension), the
front-riding derivatives are

    delta f / delta t   = f_t + G df/dnu,
    delta f / delta x_j = df/dx_j - nu_j df/dnu,

and the tangential gradient is grad f - nu (nu . grad f). These values only
depend on f restricted to the space-time front, not on the extension; the
finite-difference versions below agree across extensions to truncation
order. The mean curvature convention is K = -(1/2) div nu, which makes
K = -(n-1)/(2R) on a sphere with outward normal.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import DegenerateGradientError, OffSurfaceError, StencilError
from .fronts import LevelSetFront

__all__ = [
    "project_to_front",
    "normal",
    "normal_speed",
    "delta_shock_velocity",
    "mean_curvature",
    "delta_derivative_time",
    "tangential_gradient",
    "tangential_divergence",
]

# 4th-order central first-derivative stencil.
_STENCIL_OFFSETS = np.array([-2.0, -1.0, 1.0, 2.0])
_STENCIL_WEIGHTS = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


def _raw_normal(front: LevelSetFront, x: np.ndarray, t: float) -> np.ndarray:
    g = front.grad(x, t)
    norm = float(np.linalg.norm(g))
    if norm < 1e-12:
        raise DegenerateGradientError(f"level-set gradient vanishes near {x}")
    return g / norm


def project_to_front(front: LevelSetFront, x, t: float) -> np.ndarray:
    """Return x, projected once along grad S if it is only nearly on the front.

    Points farther than one Newton step can recover are rejected.
    """
    x = np.asarray(x, dtype=float)
    s = front.value(x, t)
    tol = front.tol_on_surface
    if abs(s) <= tol:
        return x
    g = front.grad(x, t)
    gg = float(g @ g)
    if gg < 1e-24:
        raise DegenerateGradientError(f"level-set gradient vanishes near {x}")
    x_proj = x - (s / gg) * g
    s_proj = front.value(x_proj, t)
    if abs(s_proj) > tol:
        raise OffSurfaceError(
            f"point {x} is off the front at t={t}: |S|={abs(s_proj):.3e} after projection"
        )
    return x_proj


def normal(front: LevelSetFront, x, t: float) -> np.ndarray:
    """Unit normal nu = grad S / |grad S|, pointing from Omega^- to Omega^+."""
    x = project_to_front(front, x, t)
    return _raw_normal(front, x, t)


def normal_speed(front: LevelSetFront, x, t: float) -> float:
    """Normal speed G = -S_t / |grad S| along nu."""
    x = project_to_front(front, x, t)
    g = front.grad(x, t)
    norm = float(np.linalg.norm(g))
    if norm < 1e-12:
        raise DegenerateGradientError(f"level-set gradient vanishes near {x}")
    return -front.time_deriv(x, t) / norm


def delta_shock_velocity(front: LevelSetFront, x, t: float) -> np.ndarray:
    """Front velocity U_delta = G nu = -S_t grad S / |grad S|^2.

    Both formulas are evaluated; with analytic gradients they must agree to
    1e-12, which guards the sign conventions.
    """
    x = project_to_front(front, x, t)
    g = front.grad(x, t)
    gg = float(g @ g)
    if gg < 1e-24:
        raise DegenerateGradientError(f"level-set gradient vanishes near {x}")
    u_direct = -front.time_deriv(x, t) * g / gg
    nu = g / np.sqrt(gg)
    u_gn = normal_speed(front, x, t) * nu
    tol = 1e-12 if front.grad_mode == "analytic" else 1e-6
    scale = 1.0 + float(np.linalg.norm(u_gn))
    if float(np.linalg.norm(u_direct - u_gn)) > tol * scale:
        raise StencilError("normal-speed and level-set front velocities disagree")
    return u_direct


def mean_curvature(front: LevelSetFront, x, t: float) -> float:
    """Mean curvature K = -(1/2) div nu via 4th-order central differences."""
    x = project_to_front(front, x, t)
    h = 1e-4 * front.char_length
    div = 0.0
    for j in range(front.dim):
        step = np.zeros(front.dim)
        step[j] = h
        acc = 0.0
        for off, w in zip(_STENCIL_OFFSETS, _STENCIL_WEIGHTS):
            acc += w * _raw_normal(front, x + off * step, t)[j]
        div += acc / h
    return -0.5 * div


def _scalar_grad(f, x: np.ndarray, t: float, h: float) -> np.ndarray:
    g = np.empty(x.size)
    for j in range(x.size):
        step = np.zeros(x.size)
        step[j] = h
        try:
            g[j] = (f(x + step, t) - f(x - step, t)) / (2.0 * h)
        except Exception as exc:  # noqa: BLE001
            raise StencilError(f"field evaluation failed near {x}") from exc
    return g


def delta_derivative_time(
    f: Callable[[np.ndarray, float], float],
    front: LevelSetFront,
    x,
    t: float,
    h_x: float | None = None,
    h_t: float = 1e-6,
) -> float:
    """Front-riding time derivative delta f / delta t = f_t + G df/dnu.

    f is any smooth extension of the surface quantity; the result is
    extension independent up to the stencil truncation order.
    """
    x = project_to_front(front, x, t)
    h_x = h_x if h_x is not None else 1e-6 * front.char_length
    nu = _raw_normal(front, x, t)
    big_g = normal_speed(front, x, t)
    try:
        f_t = (f(x, t + h_t) - f(x, t - h_t)) / (2.0 * h_t)
        df_dnu = (f(x + h_x * nu, t) - f(x - h_x * nu, t)) / (2.0 * h_x)
    except Exception as exc:  # noqa: BLE001
        raise StencilError(f"field evaluation failed near {x}") from exc
    return f_t + big_g * df_dnu


def tangential_gradient(
    f: Callable[[np.ndarray, float], float],
    front: LevelSetFront,
    x,
    t: float,
    h_x: float | None = None,
) -> np.ndarray:
    """In-surface gradient grad f - nu (nu . grad f); orthogonal to nu."""
    x = project_to_front(front, x, t)
    h_x = h_x if h_x is not None else 1e-6 * front.char_length
    nu = _raw_normal(front, x, t)
    g = _scalar_grad(f, x, t, h_x)
    return g - nu * float(nu @ g)


def tangential_divergence(
    A: Callable[[np.ndarray, float], np.ndarray],
    front: LevelSetFront,
    x,
    t: float,
    h_x: float | None = None,
) -> float:
    """Surface divergence sum_j (dA_j/dx_j - nu_j dA_j/dnu).

    Equals trace(J) - nu . (J nu) with J the Jacobian of the extension A.
    For A = nu this returns -2K, and for A = G nu it returns -2KG on fronts
    with tangentially constant speed.
    """
    x = project_to_front(front, x, t)
    h_x = h_x if h_x is not None else 1e-6 * front.char_length
    nu = _raw_normal(front, x, t)
    dim = front.dim
    jac = np.empty((dim, dim))
    for k in range(dim):
        step = np.zeros(dim)
        step[k] = h_x
        try:
            a_plus = np.asarray(A(x + step, t), dtype=float)
            a_minus = np.asarray(A(x - step, t), dtype=float)
        except Exception as exc:  # noqa: BLE001
            raise StencilError(f"field evaluation failed near {x}") from exc
        jac[:, k] = (a_plus - a_minus) / (2.0 * h_x)
    return float(np.trace(jac) - nu @ (jac @ nu))
