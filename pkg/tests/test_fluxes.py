"""Tests for the flux-pair models (standard, relativistic, tabulated)."""

import numpy as np
import pytest

from dshock import (
    InvalidDimensionError,
    InvalidParameterError,
    relativistic_flux,
    standard_flux,
    tabulated_flux,
)


def test_standard_flux_values():
    for dim in (1, 2, 3):
        fx = standard_flux(dim)
        rng = np.random.default_rng(dim)
        U = rng.normal(size=dim)
        np.testing.assert_allclose(fx.F(U), U)
        np.testing.assert_allclose(fx.N(U), np.outer(U, U))


def test_standard_scalar_paths():
    fx = standard_flux(1)
    assert fx.f1(0.7) == pytest.approx(0.7)
    assert fx.n1(-0.7) == pytest.approx(0.49)
    with pytest.raises(InvalidDimensionError):
        standard_flux(2).f1(1.0)


def test_rank_one_identity():
    # N(U) nu = U (F(U) . nu) for both built-in models; the 1-D jump
    # algebra and the support-edge law both rely on it.
    rng = np.random.default_rng(3)
    for dim in (2, 3):
        for fx in (standard_flux(dim), relativistic_flux(dim, c0=2.5)):
            for _ in range(20):
                U = rng.normal(scale=2.0, size=dim)
                nu = rng.normal(size=dim)
                nu /= np.linalg.norm(nu)
                lhs = fx.N(U) @ nu
                rhs = U * float(fx.F(U) @ nu)
                np.testing.assert_allclose(lhs, rhs, atol=1e-13)


def test_relativistic_speed_bound():
    c0 = 1.5
    fx = relativistic_flux(3, c0)
    rng = np.random.default_rng(8)
    for _ in range(50):
        U = rng.normal(scale=10.0, size=3)
        C = fx.F(U)
        assert np.linalg.norm(C) < c0
        # C is parallel to U with the same orientation.
        assert float(C @ U) > 0.0 or np.linalg.norm(U) == 0.0


def test_relativistic_matches_standard_at_large_c0():
    # |C(U) - U| <= |U|^3 / (2 c0^2) pointwise.
    c0 = 1e3
    rng = np.random.default_rng(21)
    fx = relativistic_flux(1, c0)
    st = standard_flux(1)
    for _ in range(40):
        u = float(rng.uniform(-2.0, 2.0))
        bound = abs(u) ** 3 / (2.0 * c0**2)
        assert abs(fx.f1(u) - st.f1(u)) <= bound + 1e-15


def test_relativistic_parity():
    # Time reversal of 1-D fronts needs F odd and N even.
    fx = relativistic_flux(1, c0=1.0)
    for u in (0.3, 1.1, 2.7):
        assert fx.f1(-u) == pytest.approx(-fx.f1(u), abs=1e-15)
        assert fx.n1(-u) == pytest.approx(fx.n1(u), abs=1e-15)


def test_relativistic_requires_positive_c0():
    with pytest.raises(InvalidParameterError):
        relativistic_flux(1, c0=0.0)
    with pytest.raises(InvalidParameterError):
        relativistic_flux(1, c0=-2.0)


def test_vector_shape_checks():
    fx = standard_flux(2)
    with pytest.raises(InvalidParameterError):
        fx.F(np.array([1.0, 2.0, 3.0]))
    with pytest.raises(InvalidParameterError):
        fx.N(np.array([np.nan, 0.0]))


def test_tabulated_flux_reproduces_standard():
    u = np.linspace(-3.0, 3.0, 61)
    fx = tabulated_flux(u, u, u**2)
    for v in (-2.5, -0.3, 0.0, 1.7):
        assert fx.f1(v) == pytest.approx(v, abs=1e-10)
        assert fx.n1(v) == pytest.approx(v**2, abs=1e-9)


def test_tabulated_flux_rejects_out_of_range():
    u = np.linspace(-1.0, 1.0, 11)
    fx = tabulated_flux(u, u, u**2)
    with pytest.raises(InvalidParameterError):
        fx.f1(1.5)


def test_tabulated_flux_validation():
    u = np.linspace(-1.0, 1.0, 11)
    with pytest.raises(InvalidParameterError):
        tabulated_flux(u[:3], u[:3], u[:3])  # too few nodes
    bad = u.copy()
    bad[4] = bad[6]
    with pytest.raises(InvalidParameterError):
        tabulated_flux(bad, u, u**2)  # not strictly increasing
    with pytest.raises(InvalidParameterError):
        tabulated_flux(u, u[:-1], u**2)  # shape mismatch
    f = u.copy()
    f[2] = np.inf
    with pytest.raises(InvalidParameterError):
        tabulated_flux(u, f, u**2)


def test_tabulated_flux_monotone_interpolation():
    # PCHIP preserves monotonicity of a tabulated monotone F.
    u = np.linspace(-2.0, 2.0, 17)
    fx = tabulated_flux(u, np.tanh(u), u * np.tanh(u))
    fine = np.linspace(-2.0, 2.0, 401)
    vals = np.array([fx.f1(v) for v in fine])
    assert np.all(np.diff(vals) >= 0.0)
