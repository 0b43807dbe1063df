"""Global functionals and conservation/monotonicity audits.

For a solution supported in an audit box, the bulk and front functionals

    M = int rho_hat dx,        m = int e dmu,
    P = int rho_hat u dx,      p = int e u_delta dmu,
    W = 1/2 int rho_hat u^2,   w = 1/2 int e u_delta^2 dmu,

satisfy M + m = const and P + p = const, m is strictly increasing while
the overcompression condition holds strictly, and both W and W + w are
nonincreasing. ``audit`` samples the functionals over time and reports
drifts, central-difference rates, and entropy flags; it refuses to run
when the support touches the audit boundary, because the theorems assume
compact support strictly inside.

The audits here are closed-form for piecewise-constant 1-D solutions and
quadrature-based for spherical trajectories (where P and p vanish by
symmetry and the radial weight is |S^{n-1}| r^{n-1}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AuditInvalidError, InvalidParameterError
from .rh import FrontState, SideStates
from .solutions import DeltaShockSolution1D
from .spherical import (
    RadialField,
    SphericalTrajectory,
    radial_moment_integral,
    unit_sphere_area,
)
from .weakcheck import TestFunctionBattery, identity_value, make_battery

__all__ = [
    "BalanceReport",
    "audit",
    "energy_dissipation_rate",
    "EnergyInequalityReport",
    "check_energy_inequality_1d",
]


@dataclass(frozen=True)
class BalanceReport:
    """Sampled functionals plus derived conservation/monotonicity data.

    ``closed_form`` tags whether the sampling is exact (piecewise-constant
    1-D) or quadrature/ODE based, which selects the documented tolerance
    class (1e-8 vs 1e-6 relative).
    """

    t: np.ndarray
    M: np.ndarray
    m: np.ndarray
    P: np.ndarray
    p: np.ndarray
    W: np.ndarray
    w: np.ndarray
    entropy_strict: np.ndarray
    mass_deficit: np.ndarray
    momentum_deficit: np.ndarray
    closed_form: bool

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0.0):
            raise InvalidParameterError("sample times must be strictly increasing")

    @property
    def dim(self) -> int:
        return self.P.shape[1]

    @property
    def sum_mass(self) -> np.ndarray:
        return self.M + self.m

    @property
    def sum_momentum(self) -> np.ndarray:
        return self.P + self.p

    @property
    def sum_energy(self) -> np.ndarray:
        return self.W + self.w

    @property
    def mdot(self) -> np.ndarray:
        return np.gradient(self.m, self.t)

    @property
    def mass_drift(self) -> float:
        scale = abs(self.sum_mass[0]) + 1e-300
        return float(np.max(np.abs(self.sum_mass - self.sum_mass[0])) / scale)

    @property
    def momentum_drift(self) -> float:
        scale = abs(self.sum_mass[0]) + 1e-300
        return float(np.max(np.abs(self.sum_momentum - self.sum_momentum[0])) / scale)

    def mass_conserved(self, tol: float | None = None) -> bool:
        tol = (1e-8 if self.closed_form else 1e-6) if tol is None else tol
        return self.mass_drift <= tol

    def momentum_conserved(self, tol: float | None = None) -> bool:
        tol = (1e-8 if self.closed_form else 1e-6) if tol is None else tol
        return self.momentum_drift <= tol

    def concentration_holds(self) -> bool:
        """mdot > 0 wherever the strict entropy flag is set."""
        md = self.mdot
        return bool(np.all(md[self.entropy_strict] > 0.0))

    def energy_monotone(self, tol: float | None = None) -> bool:
        tol = (1e-9 if self.closed_form else 1e-6) if tol is None else tol
        scale = abs(self.sum_energy[0]) + 1.0
        ok_total = np.all(np.diff(self.sum_energy) <= tol * scale)
        ok_bulk = np.all(np.diff(self.W) <= tol * scale)
        return bool(ok_total and ok_bulk)

    def columns(self):
        """Pinned CSV layout: names and a matching 2-D float array."""
        n = self.dim
        names = (
            ["t", "M", "m"]
            + [f"P_{k + 1}" for k in range(n)]
            + [f"p_{k + 1}" for k in range(n)]
            + ["W", "w", "sum_mass"]
            + [f"sum_mom_{k + 1}" for k in range(n)]
            + ["sum_energy", "mdot", "entropy_strict"]
        )
        data = np.column_stack(
            [
                self.t,
                self.M,
                self.m,
                self.P,
                self.p,
                self.W,
                self.w,
                self.sum_mass,
                self.sum_momentum,
                self.sum_energy,
                self.mdot,
                self.entropy_strict.astype(float),
            ]
        )
        return names, data


def audit(
    solution,
    times=None,
    *,
    box=None,
    inner: RadialField | None = None,
    outer: RadialField | None = None,
    annulus=None,
    panels: int = 24,
    nodes: int = 10,
) -> BalanceReport:
    """Balance audit of a 1-D solution or a spherical trajectory.

    1-D solutions must be compactly supported; the audit box defaults to
    1.2x the support bounding box and the support must stay strictly
    inside it. Spherical trajectories additionally need the side fields
    and an annulus that contains their supports.
    """
    if isinstance(solution, DeltaShockSolution1D):
        return _audit_1d(solution, times, box)
    if isinstance(solution, SphericalTrajectory):
        if annulus is None:
            raise AuditInvalidError("spherical audits need an annulus")
        return _audit_spherical(solution, inner, outer, annulus, times, panels, nodes)
    raise InvalidParameterError(f"cannot audit {type(solution).__name__}")


def _audit_1d(sol: DeltaShockSolution1D, times, box) -> BalanceReport:
    if sol.support0 is None:
        raise AuditInvalidError(
            "balance theorems assume compactly supported data; solution has none"
        )
    if times is None:
        times = np.linspace(0.0, sol.t_end, 41)
    times = np.asarray(times, dtype=float)
    if box is None:
        box = sol.spatial_bounds(0.2)
    a, b = map(float, box)
    M = np.empty(times.size)
    m = np.empty(times.size)
    P = np.empty((times.size, 1))
    p = np.empty((times.size, 1))
    W = np.empty(times.size)
    w = np.empty(times.size)
    strict = np.empty(times.size, dtype=bool)
    mdef = np.empty(times.size)
    qdef = np.empty((times.size, 1))
    fx = sol.flux
    for k, t in enumerate(times):
        lo, pos, hi = float(sol.edge_l(t)), float(sol.phi(t)), float(sol.edge_r(t))
        if not (a < lo and hi < b):
            raise AuditInvalidError(
                f"support [{lo}, {hi}] touches the audit box [{a}, {b}] at t={t}"
            )
        ll, lr = pos - lo, hi - pos
        ud = float(sol.u_delta(t))
        ek = float(sol.e(t))
        M[k] = sol.rho_l * ll + sol.rho_r * lr
        m[k] = ek
        P[k, 0] = sol.rho_l * sol.u_l * ll + sol.rho_r * sol.u_r * lr
        p[k, 0] = ek * ud
        W[k] = 0.5 * (sol.rho_l * sol.u_l ** 2 * ll + sol.rho_r * sol.u_r ** 2 * lr)
        w[k] = 0.5 * ek * ud ** 2
        strict[k] = sol.u_r < ud < sol.u_l
        mdef[k] = (
            sol.rho_l * fx.f1(sol.u_l)
            - sol.rho_r * fx.f1(sol.u_r)
            - (sol.rho_l - sol.rho_r) * ud
        )
        qdef[k, 0] = (
            sol.rho_l * fx.n1(sol.u_l)
            - sol.rho_r * fx.n1(sol.u_r)
            - (sol.rho_l * sol.u_l - sol.rho_r * sol.u_r) * ud
        )
    return BalanceReport(
        t=times,
        M=M,
        m=m,
        P=P,
        p=p,
        W=W,
        w=w,
        entropy_strict=strict,
        mass_deficit=mdef,
        momentum_deficit=qdef,
        closed_form=True,
    )


def _audit_spherical(traj, inner, outer, annulus, times, panels, nodes) -> BalanceReport:
    a, b = map(float, annulus)
    n = traj.n
    if times is None:
        times = np.linspace(0.0, traj.t_stop, 25)
    times = np.asarray(times, dtype=float)
    if n >= 2:
        area = unit_sphere_area(n)

        def weight(r):
            return area * np.asarray(r, dtype=float) ** (n - 1)

    else:

        def weight(r):
            return np.ones_like(np.asarray(r, dtype=float))

    M = np.empty(times.size)
    m = np.empty(times.size)
    W = np.empty(times.size)
    w = np.empty(times.size)
    strict = np.empty(times.size, dtype=bool)
    mdef = np.empty(times.size)
    qdef = np.zeros((times.size, n))
    for k, t in enumerate(times):
        phi = float(traj.phi_at(t))
        ud = float(traj.u_delta_at(t))
        ek = float(traj.e_at(t))
        if not (a < phi < b):
            raise AuditInvalidError(f"front radius {phi} leaves the annulus at t={t}")
        for fld, name in ((inner, "inner"), (outer, "outer")):
            if fld is None:
                continue
            lo, hi = fld.support(float(t))
            if np.isfinite(lo) and name == "inner" and lo < a - 1e-12:
                raise AuditInvalidError("inner support extends past the annulus")
            if np.isfinite(hi) and name == "outer" and hi > b + 1e-12:
                raise AuditInvalidError("outer support extends past the annulus")
        M[k] = radial_moment_integral(inner, a, phi, t, weight, panels, nodes)
        M[k] += radial_moment_integral(outer, phi, b, t, weight, panels, nodes)
        W[k] = 0.5 * radial_moment_integral(inner, a, phi, t, weight, panels, nodes, moment=2)
        W[k] += 0.5 * radial_moment_integral(outer, phi, b, t, weight, panels, nodes, moment=2)
        m[k] = float(traj.m_at(t))
        w[k] = 0.5 * m[k] * ud ** 2
        rho_i, u_i = _side_values(inner, phi, t)
        rho_o, u_o = _side_values(outer, phi, t)
        strict[k] = u_o < ud < u_i
        mdef[k] = -(rho_o * u_o - rho_i * u_i) + (rho_o - rho_i) * ud
    return BalanceReport(
        t=times,
        M=M,
        m=m,
        P=np.zeros((times.size, n)),
        p=np.zeros((times.size, n)),
        W=W,
        w=w,
        entropy_strict=strict,
        mass_deficit=mdef,
        momentum_deficit=qdef,
        closed_form=False,
    )


def _side_values(fld, r, t):
    if fld is None:
        return 0.0, 0.0
    rho = float(fld.rho(r, t))
    return (rho, float(fld.u(r, t))) if rho > 0.0 else (0.0, 0.0)


def energy_dissipation_rate(s: SideStates, f: FrontState) -> float:
    """Pointwise kinetic-energy loss density at the front (standard flux).

    1/2 [ rho^- T^- (a^- - g) + rho^+ T^+ (g - a^+)
          + rho^- (a^- - g)^3 + rho^+ (g - a^+)^3 ],

    with a = U . nu the normal velocities, g = U_delta . nu, and T the
    squared tangential speed of each side. Nonnegative whenever the
    overcompression condition holds; returned unclamped otherwise.
    """
    a_m = float(s.U_minus @ f.nu)
    a_p = float(s.U_plus @ f.nu)
    g = float(f.U_delta @ f.nu)
    t_m = float(s.U_minus @ s.U_minus) - a_m ** 2
    t_p = float(s.U_plus @ s.U_plus) - a_p ** 2
    return 0.5 * (
        s.rho_minus * t_m * (a_m - g)
        + s.rho_plus * t_p * (g - a_p)
        + s.rho_minus * (a_m - g) ** 3
        + s.rho_plus * (g - a_p) ** 3
    )


@dataclass(frozen=True)
class EnergyInequalityReport:
    """Values of the energy functional over the nonnegative battery members."""

    values: np.ndarray
    min_value: float
    members: int

    def passed(self, tol: float = 1e-6) -> bool:
        return self.min_value >= -tol


def check_energy_inequality_1d(
    solution: DeltaShockSolution1D,
    battery: TestFunctionBattery | None = None,
    level: int = 3,
    seed: int = 11,
) -> EnergyInequalityReport:
    """Distributional check that kinetic energy does not increase.

    Evaluates E(phi) = <-(rho u^2)_t - (rho u^3)_x, phi> over nonnegative
    test functions; entropic solutions give E >= 0, while non-admissible
    candidates (such as a time-reversed front) produce negative values.
    """
    if battery is None:
        lo, hi = solution.spatial_bounds(0.1)
        battery = make_battery(
            [(lo, hi), (0.0, solution.t_end * (1.0 - 1e-9))], count=8, seed=seed, nonneg_count=4
        )
    members = battery.nonneg_members
    if not members:
        raise InvalidParameterError("battery has no nonnegative member")
    values = np.array([identity_value(solution, b, "energy", level) for b in members])
    return EnergyInequalityReport(
        values=values, min_value=float(np.min(values)), members=len(members)
    )
