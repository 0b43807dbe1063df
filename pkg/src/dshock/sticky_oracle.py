"""Sticky-particle dynamics: an independent ground truth for front tracking.

Point masses move freely and merge on contact, conserving mass and
momentum; kinetic energy drops at every merge of distinct velocities. The
continuum limit of this micro-model is zero-pressure gas dynamics, so a
well-resolved run gives a reference trajectory for the concentrated front
that the closed-form solvers must reproduce.

The engine is event-driven: a priority queue holds candidate collision
times for adjacent pairs, entries are invalidated lazily through version
counters, and positions are stored as (reference point, reference time,
velocity) so that advancing time is free. Simultaneous collisions cascade
within one event time.

Radial variant: in n >= 2 dimensions with radial data, spherical shells
carry mass rho(r) |S^{n-1}| r^{n-1} dr and undergo the same 1-D dynamics
in r. Shells are only trusted away from the focusing radius; a shell
crossing ``r_min`` raises a truncation flag on the system.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EventQueueError,
    InvalidDimensionError,
    InvalidParameterError,
    NotConvergedError,
    UndersamplingError,
)

__all__ = [
    "ParticleSystem",
    "ClusterReport",
    "sample_riemann",
    "run_until",
    "delta_cluster_estimate",
    "radial_shells",
    "unit_sphere_area",
]

_TIE = 1e-13
_GAP_TOL = 1e-12


def unit_sphere_area(n: int) -> float:
    """|S^{n-1}|: 2 for n=1 (two points), 2*pi for n=2, 4*pi for n=3."""
    if n < 1:
        raise InvalidDimensionError("dimension must be >= 1")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


class ParticleSystem:
    """Ordered point masses on a line with merge-on-contact dynamics."""

    def __init__(self, positions, velocities, masses, time=0.0, r_min=None):
        x = np.asarray(positions, dtype=float)
        v = np.asarray(velocities, dtype=float)
        m = np.asarray(masses, dtype=float)
        if not (x.shape == v.shape == m.shape) or x.ndim != 1 or x.size == 0:
            raise InvalidParameterError("positions, velocities, masses must be equal-length 1-D")
        if np.any(m <= 0.0):
            raise InvalidParameterError("all particle masses must be positive")
        if np.any(np.diff(x) <= 0.0):
            raise InvalidParameterError("initial positions must be strictly increasing")
        n = x.size
        self.time = float(time)
        self._x = list(x)
        self._t = [self.time] * n
        self._v = list(v)
        self._m = list(m)
        self._alive = [True] * n
        self._ver = [0] * n
        self._left = [i - 1 for i in range(n)]
        self._right = [i + 1 if i + 1 < n else -1 for i in range(n)]
        self._head = 0
        self._heap: list = []
        self._seq = 0
        self._scale = max(1.0, float(np.max(np.abs(x))), float(np.max(np.abs(v))))
        self.merges = 0
        self.ke_dissipated = 0.0
        self.r_min = r_min
        self.truncated = False
        for i in range(n - 1):
            self._schedule(i, i + 1)

    # -- queries ---------------------------------------------------------

    def _pos(self, i: int, t: float) -> float:
        return self._x[i] + self._v[i] * (t - self._t[i])

    def _indices(self):
        i = self._head
        while i != -1:
            yield i
            i = self._right[i]

    @property
    def positions(self) -> np.ndarray:
        return np.array([self._pos(i, self.time) for i in self._indices()])

    @property
    def velocities(self) -> np.ndarray:
        return np.array([self._v[i] for i in self._indices()])

    @property
    def masses(self) -> np.ndarray:
        return np.array([self._m[i] for i in self._indices()])

    @property
    def count(self) -> int:
        return sum(1 for _ in self._indices())

    def total_mass(self) -> float:
        return float(sum(self._m[i] for i in self._indices()))

    def total_momentum(self) -> float:
        return float(sum(self._m[i] * self._v[i] for i in self._indices()))

    def kinetic_energy(self) -> float:
        return float(sum(0.5 * self._m[i] * self._v[i] ** 2 for i in self._indices()))

    # -- event machinery --------------------------------------------------

    def _schedule(self, i: int, j: int):
        if i == -1 or j == -1:
            return
        gap = self._pos(j, self.time) - self._pos(i, self.time)
        if gap < -_GAP_TOL * self._scale:
            raise EventQueueError(f"particles {i} and {j} interpenetrate by {-gap}")
        dv = self._v[i] - self._v[j]
        if dv <= 0.0:
            return
        t_hit = self.time + max(gap, 0.0) / dv
        self._seq += 1
        heapq.heappush(self._heap, (t_hit, self._seq, i, j, self._ver[i], self._ver[j]))

    def _merge(self, i: int, j: int, t_hit: float):
        mi, mj = self._m[i], self._m[j]
        vi, vj = self._v[i], self._v[j]
        m = mi + mj
        self._x[i] = self._pos(i, t_hit)
        self._t[i] = t_hit
        self._v[i] = (mi * vi + mj * vj) / m
        self._m[i] = m
        self._ver[i] += 1
        self.ke_dissipated += 0.5 * mi * mj * (vi - vj) ** 2 / m
        self._alive[j] = False
        r = self._right[j]
        self._right[i] = r
        if r != -1:
            self._left[r] = i
        self.merges += 1

    def run_until(self, T: float) -> "ParticleSystem":
        T = float(T)
        if T < self.time - _TIE:
            raise InvalidParameterError("cannot run backwards in time")
        heap = self._heap
        while heap and heap[0][0] <= T:
            t_hit, _, i, j, vi, vj = heapq.heappop(heap)
            if not (self._alive[i] and self._alive[j]):
                continue
            if self._ver[i] != vi or self._ver[j] != vj:
                continue
            if t_hit < self.time - _TIE:
                raise EventQueueError(f"event at t={t_hit} precedes current time {self.time}")
            self.time = max(self.time, t_hit)
            self._merge(i, j, self.time)
            self._schedule(self._left[i], i)
            self._schedule(i, self._right[i])
        self.time = T
        if self.r_min is not None and not self.truncated:
            for i in self._indices():
                if self._pos(i, T) < self.r_min:
                    self.truncated = True
                    break
        return self


@dataclass(frozen=True)
class ClusterReport:
    """Snapshot of the surviving clusters plus the dominant-cluster history."""

    time: float
    positions: np.ndarray
    masses: np.ndarray
    velocities: np.ndarray
    times: np.ndarray
    position_history: np.ndarray
    mass_history: np.ndarray
    velocity_history: np.ndarray
    u_delta_hat: float = field(default=0.0)
    mass_hat: float = field(default=0.0)
    position_hat: float = field(default=0.0)


def sample_riemann(
    d, L: float, N: int, mode: str = "midpoint", seed: int | None = None
) -> ParticleSystem:
    """Discretize two-state Riemann data on [-L, L] into N particles.

    Each side gets N//2 equal-mass particles at cell midpoints (or at
    sorted uniform positions in ``mode="random"``); total mass is
    L (rho_l + rho_r) plus any initial atom, which becomes a seed particle
    at x0.
    """
    if N < 100:
        raise UndersamplingError("need at least 100 particles to resolve a front")
    if L <= 0.0:
        raise InvalidParameterError("sampling half-width L must be positive")
    if mode not in ("midpoint", "random"):
        raise InvalidParameterError(f"unknown sampling mode {mode!r}")
    rng = np.random.default_rng(seed) if mode == "random" else None
    half = N // 2
    xs, vs, ms = [], [], []
    for lo, hi, rho, u in ((-L, 0.0, d.rho_l, d.u_l), (0.0, L, d.rho_r, d.u_r)):
        if rho <= 0.0:
            continue
        if rng is None:
            pts = lo + (np.arange(half) + 0.5) * (hi - lo) / half
        else:
            pts = np.sort(rng.uniform(lo, hi, size=half))
        xs.append(pts)
        vs.append(np.full(half, u))
        ms.append(np.full(half, rho * (hi - lo) / half))
    if d.e0 > 0.0:
        xs.append(np.array([d.x0]))
        vs.append(np.array([float(d.u_delta0)]))
        ms.append(np.array([d.e0]))
    x = np.concatenate(xs)
    order = np.argsort(x, kind="stable")
    return ParticleSystem(
        x[order], np.concatenate(vs)[order], np.concatenate(ms)[order]
    )


def run_until(ps: ParticleSystem, T: float) -> ParticleSystem:
    return ps.run_until(T)


def delta_cluster_estimate(ps: ParticleSystem, T: float, times=None) -> ClusterReport:
    """Advance to T recording the heaviest cluster; fail without dominance.

    The dominant cluster must end with at least 10x the median surviving
    mass, otherwise no concentration took place (for instance when the
    data are a rarefaction and nothing ever collides).
    """
    if times is None:
        times = np.linspace(0.0, T, 17)[1:]
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(np.diff(times) <= 0.0) or times[-1] > T + _TIE:
        raise InvalidParameterError("query times must be increasing and end at or before T")
    pos_h, mass_h, vel_h = [], [], []
    for t in times:
        ps.run_until(t)
        masses = ps.masses
        k = int(np.argmax(masses))
        pos_h.append(ps.positions[k])
        mass_h.append(masses[k])
        vel_h.append(ps.velocities[k])
    ps.run_until(T)
    masses = ps.masses
    k = int(np.argmax(masses))
    if masses[k] < 10.0 * np.median(masses):
        raise NotConvergedError(
            "no dominant cluster formed "
            f"(heaviest {masses[k]:.3e} vs median {np.median(masses):.3e})"
        )
    return ClusterReport(
        time=ps.time,
        positions=ps.positions,
        masses=masses,
        velocities=ps.velocities,
        times=times,
        position_history=np.array(pos_h),
        mass_history=np.array(mass_h),
        velocity_history=np.array(vel_h),
        u_delta_hat=float(ps.velocities[k]),
        mass_hat=float(masses[k]),
        position_hat=float(ps.positions[k]),
    )


def radial_shells(
    inner,
    outer,
    n: int,
    N: int,
    annulus: tuple[float, float],
    boundary: float | None = None,
    front_seed: tuple[float, float, float] | None = None,
    r_min: float = 0.0,
) -> ParticleSystem:
    """Spherical-shell discretization of radial data on an annulus.

    ``inner``/``outer`` provide densities and radial velocities via
    ``.rho(r, t)`` and ``.u(r, t)`` at t=0 (``None`` means vacuum), split
    at ``boundary``. ``front_seed = (phi0, e0, u_delta0)`` inserts the
    initial concentrated front as one shell of mass
    e0 |S^{n-1}| phi0^{n-1}.
    """
    if n < 2:
        raise InvalidDimensionError("radial shells need dimension n >= 2")
    if N < 100:
        raise UndersamplingError("need at least 100 shells to resolve a front")
    r_lo, r_hi = float(annulus[0]), float(annulus[1])
    if not (0.0 <= r_min <= r_lo < r_hi):
        raise InvalidParameterError("annulus must satisfy 0 <= r_min <= r_lo < r_hi")
    if boundary is None:
        boundary = r_lo if inner is None else 0.5 * (r_lo + r_hi)
    area = unit_sphere_area(n)
    dr = (r_hi - r_lo) / N
    r = r_lo + (np.arange(N) + 0.5) * dr
    xs, vs, ms = [], [], []
    for ri in r:
        fld = inner if ri < boundary else outer
        if fld is None:
            continue
        rho = float(fld.rho(ri, 0.0))
        if rho <= 0.0:
            continue
        xs.append(ri)
        vs.append(float(fld.u(ri, 0.0)))
        ms.append(rho * area * ri ** (n - 1) * dr)
    if front_seed is not None:
        phi0, e0, ud0 = map(float, front_seed)
        if e0 > 0.0:
            xs.append(phi0)
            vs.append(ud0)
            ms.append(e0 * area * phi0 ** (n - 1))
    if not xs:
        raise InvalidParameterError("no mass anywhere in the annulus")
    x = np.array(xs)
    order = np.argsort(x, kind="stable")
    return ParticleSystem(
        x[order], np.array(vs)[order], np.array(ms)[order], r_min=r_min
    )
