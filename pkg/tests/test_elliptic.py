import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expzero.elliptic import (DegenerateLattice, LatticePointError, VanishingOnPath, baker_akhiezer_phi,
                              baker_akhiezer_psi, eisenstein_direct, eisenstein_invariants, elliptic_from_lattice,
                              elliptic_verify, lattice_point_from_periods, period_vector_of_log_derivative,
                              psi_log_derivative, quasi_period, sigma_w, wp, wp_prime, zeta_addition_form, zeta_w)

LATTICES = [(2.0, 2j), (1.0, 0.3 + 1.1j), (1 + 0.2j, 5.3 + 2.9j), (2j, 2.0)]


def theta_wp(W1, W2, z):
    """Weierstrass wp from Jacobi theta functions (full periods W1, W2 with Im(W2/W1) > 0)."""
    tau = mpmath.mpc(W2 / W1)
    q = mpmath.exp(1j * mpmath.pi * tau)
    v = mpmath.pi * mpmath.mpc(z) / W1
    t2, t3 = mpmath.jtheta(2, 0, q), mpmath.jtheta(3, 0, q)
    main = (mpmath.pi * t2 * t3 * mpmath.jtheta(4, v, q) / (W1 * mpmath.jtheta(1, v, q))) ** 2
    return complex(main - mpmath.pi**2 / (3 * W1**2) * (t2**4 + t3**4))


def theta_sigma(W1, W2, eta1, z):
    tau = mpmath.mpc(W2 / W1)
    q = mpmath.exp(1j * mpmath.pi * tau)
    v = mpmath.pi * mpmath.mpc(z) / W1
    t1p = mpmath.jtheta(1, 0, q, 1)
    return complex(W1 / mpmath.pi * mpmath.exp(eta1 * mpmath.mpc(z) ** 2 / (2 * W1)) * mpmath.jtheta(1, v, q) / t1p)


def oriented(w1, w2):
    return (w1, w2) if (w2 / w1).imag > 0 else (w2, w1)


@pytest.mark.parametrize("w1,w2", LATTICES)
def test_wp_matches_theta_oracle(w1, w2):
    data = elliptic_from_lattice(w1, w2)
    W1, W2 = oriented(w1, w2)
    for z in (0.31 + 0.17j, 0.7 * w1 + 0.2 * w2, -0.4 * w1 + 0.55 * w2):
        want = theta_wp(W1, W2, z)
        assert abs(wp(data, z) - want) <= 1e-10 * max(1, abs(want))


@pytest.mark.parametrize("w1,w2", LATTICES)
def test_sigma_matches_theta_oracle(w1, w2):
    data = elliptic_from_lattice(w1, w2)
    W1, W2 = oriented(w1, w2)
    eta = data.eta1 if W1 == w1 else data.eta2
    for z in (0.31 + 0.17j, 0.6 * w1 + 0.3 * w2):
        want = theta_sigma(W1, W2, eta, z)
        assert abs(sigma_w(data, z) - want) <= 1e-9 * max(1, abs(want))


def test_square_lattice_invariants():
    data = elliptic_from_lattice(2.0, 2j)
    assert abs(data.g3) < 1e-12
    assert abs(data.g2.imag) < 1e-12
    g2d, g3d = eisenstein_direct(2.0, 2j, 200)
    assert abs(g2d - data.g2) < 1e-3
    g2b, g3b = eisenstein_invariants(data, data.series_depth + 10)
    assert abs(g2b - data.g2) < 1e-10


@pytest.mark.parametrize("w1,w2", LATTICES)
def test_legendre_relation(w1, w2):
    data = elliptic_from_lattice(w1, w2)
    assert min(abs(data.legendre - 2j * math.pi), abs(data.legendre + 2j * math.pi)) < 1e-10


@pytest.mark.parametrize("w1,w2", LATTICES)
def test_verify_report_is_clean(w1, w2):
    rep = elliptic_verify(w1, w2)
    for key in ("ode_relative", "wp_even", "zeta_shift_eta1", "wp_prime_half_period", "g2_depth_consistency",
                "half_period_identity", "zeta_addition"):
        assert rep[key] < 1e-8, key
    for key in ("zeta_prime_vs_wp", "sigma_log_derivative_vs_zeta", "wp_prime_vs_fd", "psi_log_derivative"):
        assert rep[key] < 1e-6, key
    assert max(rep["phi_double_periodicity"].values()) < 1e-8


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95), st.integers(-3, 3), st.integers(-3, 3))
def test_wp_is_periodic_and_even(x, y, a, b):
    data = elliptic_from_lattice(1.0, 0.3 + 1.1j)
    z = x * data.omega1 + y * data.omega2
    base = wp(data, z)
    w = a * data.omega1 + b * data.omega2
    assert abs(wp(data, z + w) - base) <= 1e-9 * max(1, abs(base))
    assert abs(wp(data, -z) - base) <= 1e-9 * max(1, abs(base))
    dP = wp_prime(data, z)
    assert abs(dP**2 - (4 * base**3 - data.g2 * base - data.g3)) <= 1e-8 * max(1, abs(dP) ** 2)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95), st.integers(-2, 2), st.integers(-2, 2))
def test_sigma_quasi_periodicity(x, y, a, b):
    data = elliptic_from_lattice(2.0, 2j)
    z = x * data.omega1 + y * data.omega2
    w = a * data.omega1 + b * data.omega2
    eta = quasi_period(data, w)
    eps = (-1) ** (a + b + a * b)
    want = eps * cmath.exp(eta * (z + w / 2)) * sigma_w(data, z)
    assert abs(sigma_w(data, z + w) - want) <= 1e-8 * max(1, abs(want))
    assert abs(zeta_w(data, z + w) - zeta_w(data, z) - eta) < 1e-9


def test_psi_has_simple_zero_at_u():
    data = elliptic_from_lattice(2.0, 2j)
    u = 0.6 + 0.42j
    want = cmath.exp(u * zeta_w(data, u)) / sigma_w(data, u)
    for h in (1e-4, 1e-5):
        ratio = baker_akhiezer_psi(data, u, u + h) / h
        assert abs(ratio - want) < 10 * h * abs(want)


def test_psi_log_derivative_and_addition():
    data = elliptic_from_lattice(1 + 0.2j, 5.3 + 2.9j)
    u = 0.3 * data.omega1 + 0.21 * data.omega2
    zs = np.array([0.4 * data.omega1 + 0.1 * data.omega2, 0.77 * data.omega1 + 0.61 * data.omega2])
    h = 1e-6
    fd = (np.log(baker_akhiezer_psi(data, u, zs + h)) - np.log(baker_akhiezer_psi(data, u, zs - h))) / (2 * h)
    assert np.max(np.abs(fd - psi_log_derivative(data, u, zs))) < 1e-5
    assert np.max(np.abs(zeta_addition_form(data, u, zs) - zeta_w(data, zs - u))) < 1e-9


def test_half_period_identity():
    data = elliptic_from_lattice(2.0, 2j)
    half = data.omega1 / 2
    z = 0.33 + 0.71j
    lhs = wp(data, z) - wp(data, half)
    rhs = baker_akhiezer_psi(data, half, z) ** 2 / (sigma_w(data, half) ** 2 * baker_akhiezer_phi(data, data.omega1, z))
    assert abs(lhs - rhs) <= 1e-10 * abs(lhs)


def test_period_vectors_on_square_lattice():
    data = elliptic_from_lattice(2.0, 2j)
    assert period_vector_of_log_derivative(data, lambda z: np.full(np.shape(z), 3.0 + 0j)) == (0, 0)
    v1 = period_vector_of_log_derivative(data, lambda z: baker_akhiezer_phi(data, data.omega1, z))
    v2 = period_vector_of_log_derivative(data, lambda z: baker_akhiezer_phi(data, data.omega2, z))
    assert v1 == (0, -1) and v2 == (1, 0)
    both = period_vector_of_log_derivative(
        data, lambda z: baker_akhiezer_phi(data, data.omega1, z) * baker_akhiezer_phi(data, data.omega2, z))
    assert both == (v1[0] + v2[0], v1[1] + v2[1])


def test_period_vector_signs_follow_orientation():
    data = elliptic_from_lattice(2j, 2.0)
    v1 = period_vector_of_log_derivative(data, lambda z: baker_akhiezer_phi(data, data.omega1, z))
    assert v1 == (0, 1)


@pytest.mark.parametrize("w1,w2", LATTICES[:3])
def test_lattice_point_recovered_from_periods(w1, w2):
    # f = Phi^(2 w1 - w2) times a doubly periodic unit: its periods pin down 2 w1 - w2
    data = elliptic_from_lattice(w1, w2)
    om = 2 * data.omega1 - data.omega2

    def f(z):
        return baker_akhiezer_phi(data, om, z) * np.exp(0.1 * wp(data, z) + 0.05 * wp_prime(data, z))

    p, q = period_vector_of_log_derivative(data, f)
    assert lattice_point_from_periods(data, p, q) == (2, -1)


def test_errors():
    with pytest.raises(DegenerateLattice):
        elliptic_from_lattice(1.0, 2.0)
    data = elliptic_from_lattice(2.0, 2j)
    with pytest.raises(LatticePointError):
        wp(data, 2.0 + 2j)
    with pytest.raises(LatticePointError):
        baker_akhiezer_psi(data, 0.0, 0.5)
    with pytest.raises(ValueError):
        quasi_period(data, 0.5)
    with pytest.raises(VanishingOnPath):
        # sigma(z - z0) vanishes on the first generator path
        z0 = 0.37 * (data.omega1 + data.omega2) / 2 + 0.5
        period_vector_of_log_derivative(data, lambda z: sigma_w(data, z - z0))
