"""Weak-form verification of candidate front solutions.

A pair (rho_hat, e on Gamma) solves the system in the distributional sense
when, for every smooth compactly supported phi,

    int int rho_hat (phi_t + F(u) phi_x) dx dt
      + int e (phi_t + G d(phi)/d(nu)) |_{front} dt
      + int rho_hat(x, 0) phi(x, 0) dx + e(0) phi(X(0), 0)  =  0,

together with the momentum analogue (density rho_hat u, flux rho_hat N(u),
front weight e u_delta). This module evaluates those functionals on
batteries of tensor-product bump test functions with analytic derivatives
and reports the residuals over a ladder of quadrature levels.

Quadrature is aligned to the solution structure: the time axis is split
where a discontinuity trajectory crosses the test-function box, and each
spatial integral is split at the front and support edges, so every panel
integrates a smooth function and the residual of a true solution converges
at the quadrature order instead of stalling at O(h).

Supported candidates: 1-D solutions and planar n-D solutions (where the
identities factorize exactly through the front frame because tangential
flux terms integrate to zero against compactly supported factors). Curved
fronts are not supported here.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bumps import BumpFactor, TensorBump
from .errors import InvalidBatteryError, InvalidParameterError, UnsupportedFrontError
from .solutions import DeltaShockSolution1D, PlanarSolution

__all__ = [
    "TestFunctionBattery",
    "WeakResidual",
    "make_battery",
    "identity_value",
    "evaluate_identities",
]

_GAUSS_NODES = 8


@dataclass(frozen=True)
class TestFunctionBattery:
    """Deterministic battery of bump test functions over one space-time box."""

    functions: tuple
    seed: int
    box: tuple

    def __len__(self):
        return len(self.functions)

    @property
    def nonneg_members(self) -> tuple:
        return tuple(f for f in self.functions if f.nonneg)


def make_battery(box, count: int, seed: int, nonneg_count: int = 2) -> TestFunctionBattery:
    """Build ``count`` tensor bumps inside ``box`` = ((x lo, hi), ..., (t lo, hi)).

    The last pair is the time interval and must start at t >= 0. The first
    member always spans the whole box and is anchored at the initial time
    (so the initial-data terms get exercised); the first ``nonneg_count``
    members are nonnegative. Identical seeds give bit-identical batteries.
    """
    if count < 1:
        raise InvalidBatteryError("battery needs at least one member")
    box = [tuple(map(float, pair)) for pair in box]
    if len(box) < 2:
        raise InvalidBatteryError("box needs at least one space interval plus time")
    for lo, hi in box:
        if not lo < hi:
            raise InvalidBatteryError("box intervals must be nonempty")
    t_lo, t_hi = box[-1]
    if t_lo < 0.0:
        raise InvalidBatteryError("test functions must vanish for t < 0")
    rng = np.random.default_rng(seed)
    members = []
    for i in range(count):
        nonneg = i < nonneg_count
        space_factors = []
        for lo, hi in box[:-1]:
            if i == 0:
                c, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
            else:
                w = hi - lo
                c = rng.uniform(lo + 0.2 * w, hi - 0.2 * w)
                h = rng.uniform(0.18 * w, 0.95 * min(c - lo, hi - c))
            poly = (1.0,) if nonneg else _random_poly(rng)
            space_factors.append(BumpFactor(c - h, c + h, poly))
        anchored = i == 0 or rng.random() < 0.4
        tpoly = (1.0,) if nonneg else _random_poly(rng)
        if anchored:
            if i == 0:
                hi_t = t_hi
            else:
                hi_t = rng.uniform(t_lo + 0.4 * (t_hi - t_lo), t_hi)
            tf = BumpFactor(t_lo, hi_t, (1.0,) if nonneg else tpoly, anchored_left=True)
        else:
            w = t_hi - t_lo
            c = rng.uniform(t_lo + 0.2 * w, t_hi - 0.2 * w)
            h = rng.uniform(0.15 * w, 0.95 * min(c - t_lo, t_hi - c))
            tf = BumpFactor(c - h, c + h, (1.0,) if nonneg else tpoly)
        members.append(TensorBump(space_factors, tf, amplitude=1.0))
    return TestFunctionBattery(functions=tuple(members), seed=int(seed), box=tuple(box))


def _random_poly(rng) -> tuple:
    deg = int(rng.integers(0, 3))
    coeffs = rng.uniform(-1.0, 1.0, size=deg + 1)
    if np.max(np.abs(coeffs)) < 0.2:
        coeffs[-1] = 1.0
    return tuple(float(c) for c in coeffs)


# -- quadrature machinery --------------------------------------------------


def _gauss(panels: int, nodes: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halfs = 0.5 * np.diff(edges)
    pts = (mids[:, None] + halfs[:, None] * x[None, :]).ravel()
    wts = (halfs[:, None] * w[None, :]).ravel()
    return pts, wts


def _crossing_times(traj, c: float, t_lo: float, t_hi: float) -> list[float]:
    ts = np.linspace(t_lo, t_hi, 65)
    vals = np.asarray(traj(ts), dtype=float) - c
    if not np.all(np.isfinite(vals)):
        return []
    out = []
    for k in range(ts.size - 1):
        va, vb = vals[k], vals[k + 1]
        if va == 0.0:
            out.append(float(ts[k]))
        elif va * vb < 0.0:
            out.append(float(brentq(lambda s: float(traj(s)) - c, ts[k], ts[k + 1], xtol=1e-13)))
    return out


def _pieces(sol: DeltaShockSolution1D, t: float, xlo: float, xhi: float):
    pos = float(sol.phi(t))
    lo_e, hi_e = float(sol.edge_l(t)), float(sol.edge_r(t))
    brk = sorted(b for b in (pos, lo_e, hi_e) if np.isfinite(b) and xlo < b < xhi)
    edges = [xlo] + brk + [xhi]
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 1e-14:
            continue
        xm = 0.5 * (a + b)
        if not (lo_e <= xm <= hi_e):
            yield a, b, None
        else:
            yield a, b, ("l" if xm < pos else "r")


def _bulk_x(sol, bump, t, dl, dr, ql, qr, panels, nodes):
    total = 0.0
    xlo, xhi = bump.space_box[0]
    for a, b, side in _pieces(sol, t, xlo, xhi):
        if side is None:
            continue
        d, q = (dl, ql) if side == "l" else (dr, qr)
        if d != 0.0:
            xs, ws = _gauss(panels, nodes, a, b)
            total += d * float(ws @ np.asarray(bump.dt_x(xs, t)))
        if q != 0.0:
            total += q * (float(bump.value_x(b, t)) - float(bump.value_x(a, t)))
    return total


def _initial_x(sol, bump, dl, dr, panels, nodes):
    total = 0.0
    xlo, xhi = bump.space_box[0]
    for a, b, side in _pieces(sol, 0.0, xlo, xhi):
        if side is None:
            continue
        d = dl if side == "l" else dr
        if d != 0.0:
            xs, ws = _gauss(panels, nodes, a, b)
            total += d * float(ws @ np.asarray(bump.value_x(xs, 0.0)))
    return total


def _identity_value_1d(sol, dl, dr, ql, qr, aw, a0, bump, level, nodes):
    (xlo, xhi) = bump.space_box[0]
    t_lo, t_hi = bump.t_support
    if t_lo < -1e-15:
        raise InvalidBatteryError("test function support intersects t < 0")
    if t_hi > sol.t_end + 1e-12:
        raise InvalidBatteryError("test function lives past the solution window")
    panels = 2 ** (level + 1)
    value = 0.0
    if t_hi > t_lo + 1e-15:
        cuts = {t_lo, t_hi}
        trajs = [sol.phi]
        if sol.support0 is not None:
            trajs += [sol.edge_l, sol.edge_r]
        for traj in trajs:
            for c in (xlo, xhi):
                cuts.update(_crossing_times(traj, c, t_lo, t_hi))
        segs = sorted(cuts)
        for s0, s1 in zip(segs[:-1], segs[1:]):
            if s1 - s0 <= 1e-14:
                continue
            tk, wk = _gauss(panels, nodes, s0, s1)
            for t, wt in zip(tk, wk):
                contrib = _bulk_x(sol, bump, t, dl, dr, ql, qr, panels, nodes)
                pos = float(sol.phi(t))
                if xlo < pos < xhi:
                    a_t = aw(t)
                    if a_t != 0.0:
                        contrib += a_t * (
                            float(bump.dt_x(pos, t))
                            + float(sol.u_delta(t)) * float(bump.dx_x(pos, t))
                        )
                value += wt * contrib
    if t_lo <= 1e-15:
        value += _initial_x(sol, bump, dl, dr, panels, nodes)
        value += a0 * float(bump.value_x(float(sol.phi(0.0)), 0.0))
    return value


def _pairs_1d(sol: DeltaShockSolution1D, kind: str):
    fx = sol.flux
    rl, rr, ul, ur = sol.rho_l, sol.rho_r, sol.u_l, sol.u_r
    e0 = float(sol.e(0.0))
    ud0 = float(sol.u_delta(0.0))
    if kind == "mass":
        return (
            rl,
            rr,
            rl * fx.f1(ul) if rl else 0.0,
            rr * fx.f1(ur) if rr else 0.0,
            lambda t: float(sol.e(t)),
            e0,
        )
    if kind == "momentum":
        return (
            rl * ul,
            rr * ur,
            rl * fx.n1(ul) if rl else 0.0,
            rr * fx.n1(ur) if rr else 0.0,
            lambda t: float(sol.e(t)) * float(sol.u_delta(t)),
            e0 * ud0,
        )
    if kind == "energy":
        if fx.name != "standard":
            raise InvalidParameterError("the energy identity is specific to the standard flux")
        return (
            rl * ul ** 2,
            rr * ur ** 2,
            rl * ul ** 3,
            rr * ur ** 3,
            lambda t: float(sol.e(t)) * float(sol.u_delta(t)) ** 2,
            e0 * ud0 ** 2,
        )
    raise InvalidParameterError(f"unknown identity kind {kind!r}")


def identity_value(
    sol: DeltaShockSolution1D, bump: TensorBump, kind: str, level: int = 3, nodes: int = _GAUSS_NODES
) -> float:
    """Value of one weak functional for a 1-D candidate (0 for solutions)."""
    dl, dr, ql, qr, aw, a0 = _pairs_1d(sol, kind)
    return _identity_value_1d(sol, dl, dr, ql, qr, aw, a0, bump, level, nodes)


@dataclass(frozen=True)
class WeakResidual:
    """Residual table over quadrature levels for 1 + n weak identities."""

    identity_names: tuple
    levels: tuple
    table: np.ndarray
    per_member: np.ndarray

    @property
    def residuals(self) -> np.ndarray:
        return self.table[-1]

    @property
    def max_residual(self) -> float:
        return float(np.max(self.table[-1]))

    @property
    def orders(self) -> np.ndarray:
        """Best observed convergence order per identity across the ladder."""
        out = np.zeros(self.table.shape[1])
        floor = 1e-13 * (1.0 + np.max(self.table))
        for c in range(self.table.shape[1]):
            col = self.table[:, c]
            slopes = [
                np.log2(col[k] / col[k + 1])
                for k in range(len(col) - 1)
                if col[k] > floor and col[k + 1] > floor
            ]
            if slopes:
                out[c] = max(slopes)
            elif np.all(col <= floor):
                out[c] = np.inf
        return out


def _factor_integral(factor: BumpFactor) -> float:
    xs, ws = _gauss(8, 10, factor.lo, factor.hi)
    return float(ws @ np.asarray(factor.value(xs)))


def _reduced_bump(member: TensorBump) -> TensorBump:
    return TensorBump([member.space_factors[0]], member.time_factor, amplitude=member.amplitude)


def _planar_values(cand: PlanarSolution, member: TensorBump, level: int, nodes: int) -> np.ndarray:
    """(mass, momentum_1..n) values; member axes live in the front frame."""
    n = cand.dim
    if len(member.space_factors) != n:
        raise InvalidBatteryError(
            f"battery members have {len(member.space_factors)} space factors, candidate needs {n}"
        )
    base = cand.base
    tan_scale = 1.0
    for f in member.space_factors[1:]:
        tan_scale *= _factor_integral(f)
    rb = _reduced_bump(member)
    v_mass = identity_value(base, rb, "mass", level, nodes) * tan_scale
    v_norm = identity_value(base, rb, "momentum", level, nodes) * tan_scale
    v_tan = np.empty(n - 1)
    for j in range(n - 1):
        dl = base.rho_l * cand.u_tan_l[j]
        dr = base.rho_r * cand.u_tan_r[j]
        v_tan[j] = (
            _identity_value_1d(
                base,
                dl,
                dr,
                dl * base.u_l,
                dr * base.u_r,
                lambda t: 0.0,
                0.0,
                rb,
                level,
                nodes,
            )
            * tan_scale
        )
    momentum = cand.frame[0] * v_norm + v_tan @ cand.frame[1:]
    return np.concatenate(([v_mass], momentum))


def evaluate_identities(candidate, battery: TestFunctionBattery, levels=(0, 1, 2, 3)) -> WeakResidual:
    """Residual ladder of the defining identities for a candidate solution.

    Returns max |value| over the battery per identity and level; for a true
    solution the finest row is quadrature noise and the ladder exhibits the
    scheme's convergence order. 1-D candidates yield (mass, momentum);
    planar candidates yield (mass, momentum_1..n) in Cartesian components.
    """
    levels = tuple(int(l) for l in levels)
    if not levels or any(l < 0 for l in levels) or list(levels) != sorted(set(levels)):
        raise InvalidParameterError("levels must be strictly increasing and nonnegative")
    if isinstance(candidate, DeltaShockSolution1D):
        names = ("mass", "momentum_1")

        def member_values(member, level):
            return np.array(
                [
                    identity_value(candidate, member, "mass", level),
                    identity_value(candidate, member, "momentum", level),
                ]
            )

    elif isinstance(candidate, PlanarSolution):
        names = ("mass",) + tuple(f"momentum_{k + 1}" for k in range(candidate.dim))

        def member_values(member, level):
            return _planar_values(candidate, member, level, _GAUSS_NODES)

    else:
        raise UnsupportedFrontError(
            "weak-identity evaluation supports 1-D and planar candidates only"
        )
    table = np.zeros((len(levels), len(names)))
    per_member = np.zeros((len(battery.functions), len(names)))
    workers = max(1, int(os.environ.get("DSHOCK_THREADS", "1")))
    for li, level in enumerate(levels):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(
                    pool.map(lambda m: np.abs(member_values(m, level)), battery.functions)
                )
        else:
            rows = [np.abs(member_values(m, level)) for m in battery.functions]
        for mi, vals in enumerate(rows):
            table[li] = np.maximum(table[li], vals)
            if li == len(levels) - 1:
                per_member[mi] = vals
    return WeakResidual(identity_names=names, levels=levels, table=table, per_member=per_member)
