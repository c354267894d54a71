"""Weierstrass functions and the genus-one Baker-Akhiezer factors.

Lattice sums are organised by rows: with tau = w2/w1 and v = z/w1, the sum
over one row {n + m tau : n in Z} has a closed form through pi cot and
pi^2 csc^2, so

    wp(z) = (pi/w1)^2 [ sum_m csc^2(pi(v - m tau)) - 1/3 - sum_{m != 0} csc^2(pi m tau) ]

and the remaining sum over rows |m| <= depth converges like
|exp(2 pi i tau)|^depth.  Evaluation happens in a reduced basis (|Re tau|
<= 1/2, |tau| >= 1) at a point moved into the fundamental cell, then
quasi-periodicity carries zeta and sigma back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "LatticePointError",
    "DegenerateLattice",
    "VanishingOnPath",
    "EllipticData",
    "elliptic_from_lattice",
    "eisenstein_invariants",
    "eisenstein_direct",
    "wp",
    "wp_prime",
    "zeta_w",
    "sigma_w",
    "baker_akhiezer_phi",
    "baker_akhiezer_psi",
    "period_vector_of_log_derivative",
    "lattice_point_from_periods",
    "elliptic_verify",
]

PI = math.pi
PATH_OFFSET = 0.37


class LatticePointError(ValueError):
    pass


class DegenerateLattice(ValueError):
    pass


class VanishingOnPath(ValueError):
    pass


def _cot(x):
    """cot and csc^2 without overflow for large |Im x|."""
    x = np.asarray(x, dtype=complex)
    up = x.imag >= 0
    t = np.exp(np.where(up, 2j * x, -2j * x))
    cot = np.where(up, 1j * (t + 1) / (t - 1), 1j * (1 + t) / (1 - t))
    csc2 = -4 * t / (1 - t) ** 2
    return cot, csc2


def _reduce_basis(w1: complex, w2: complex):
    """Gauss reduction; returns (u1, u2, M) with (u1, u2) = M (w1, w2), Im(u2/u1) > 0."""
    M = np.array([[1, 0], [0, 1]], dtype=np.int64)
    u1, u2 = w1, w2
    if (u2 / u1).imag < 0:
        u2, M = -u2, np.array([[1, 0], [0, -1]], dtype=np.int64)
    for _ in range(200):
        tau = u2 / u1
        k = round(tau.real)
        if k:
            u2 = u2 - k * u1
            M = np.array([M[0], M[1] - k * M[0]])
        if abs(u2) < abs(u1) * (1 - 1e-15):
            u1, u2 = u2, -u1
            M = np.array([M[1], -M[0]])
            continue
        break
    return u1, u2, M


@dataclass(frozen=True)
class EllipticData:
    """A lattice with its quasi-periods and invariants.

    ``omega1, omega2`` are the user's generators and ``eta1, eta2`` their
    quasi-periods; everything is evaluated in an internal reduced basis.
    """

    omega1: complex
    omega2: complex
    eta1: complex
    eta2: complex
    g2: complex
    g3: complex
    series_depth: int
    _w: tuple = field(repr=False, default=())  # reduced basis (u1, u2)
    _M: tuple = field(repr=False, default=())  # reduced = M @ user
    _c: complex = field(repr=False, default=0j)  # (pi/u1)^2 (1/3 + sum csc^2(pi m tau))
    _eta_red: tuple = field(repr=False, default=())

    @property
    def tau(self) -> complex:
        return self._w[1] / self._w[0]

    @property
    def legendre(self) -> complex:
        """omega1 eta2 - omega2 eta1, which is -2 pi i or 2 pi i."""
        return self.omega1 * self.eta2 - self.omega2 * self.eta1

    def to_json(self) -> dict:
        c = lambda w: [w.real, w.imag]  # noqa: E731
        return {"omega1": c(self.omega1), "omega2": c(self.omega2), "eta1": c(self.eta1), "eta2": c(self.eta2),
                "g2": c(self.g2), "g3": c(self.g3), "series_depth": self.series_depth}


def _rows(depth: int) -> np.ndarray:
    return np.arange(-depth, depth + 1)


def _lattice_coords(data: EllipticData, z):
    """Real coordinates (x, y) with z = x u1 + y u2 in the reduced basis."""
    u1, u2 = data._w
    z = np.asarray(z, dtype=complex)
    det = (u1.conjugate() * u2).imag
    x = (z.conjugate() * u2).imag / det
    y = (u1.conjugate() * z).imag / det
    return x, y


def _reduce_point(data: EllipticData, z):
    u1, u2 = data._w
    x, y = _lattice_coords(data, z)
    a, b = np.round(x), np.round(y)
    z0 = np.asarray(z, dtype=complex) - a * u1 - b * u2
    return z0, a, b


def _check_not_lattice(data: EllipticData, z0, what="z"):
    if np.any(np.abs(z0) < 1e-12 * abs(data._w[0])):
        raise LatticePointError(f"{what} is a lattice point")


def _row_sums(data: EllipticData, z0):
    """Per-point (sum cot-terms, sum csc^2, sum cot*csc^2) over rows."""
    u1, u2 = data._w
    tau = u2 / u1
    m = _rows(data.series_depth)
    v = np.asarray(z0, dtype=complex)[..., None] / u1
    cot, csc2 = _cot(PI * (v - m * tau))
    return cot, csc2, m


def _eta_terms(data: EllipticData):
    tau = data._w[1] / data._w[0]
    m = _rows(data.series_depth)
    m = m[m != 0]
    cot, csc2 = _cot(PI * m * tau)
    return cot, csc2, m


def _build(omega1, omega2, depth):
    u1, u2, M = _reduce_basis(complex(omega1), complex(omega2))
    tau = u2 / u1
    if not (tau.imag > 1e-12):
        raise DegenerateLattice("generators are dependent over the reals")
    proto = EllipticData(omega1, omega2, 0j, 0j, 0j, 0j, depth, (u1, u2), tuple(map(tuple, M.tolist())), 0j)
    _, csc2, _ = _eta_terms(proto)
    c = (PI / u1) ** 2 * (1.0 / 3.0 + np.sum(csc2))
    proto = EllipticData(omega1, omega2, 0j, 0j, 0j, 0j, depth, (u1, u2), proto._M, complex(c))
    # quasi-periods of the reduced basis: eta(u1) = c u1, eta(u2) from Legendre
    e1 = c * u1
    e2 = (e1 * u2 - 2j * PI) / u1
    proto = EllipticData(omega1, omega2, 0j, 0j, 0j, 0j, depth, (u1, u2), proto._M, complex(c), (e1, e2))
    g2, g3 = eisenstein_invariants(proto)
    eta1 = 2 * zeta_w(proto, omega1 / 2)
    eta2 = 2 * zeta_w(proto, omega2 / 2)
    return EllipticData(complex(omega1), complex(omega2), complex(eta1), complex(eta2), complex(g2), complex(g3),
                        depth, (u1, u2), proto._M, complex(c), (e1, e2))


def elliptic_from_lattice(omega1: complex, omega2: complex, depth: int = 40) -> EllipticData:
    """Lattice data with g2 = 60 G4, g3 = 140 G6 and eta_i = 2 zeta(omega_i / 2)."""
    if depth < 1:
        raise ValueError("depth must be positive")
    if omega1 == 0 or omega2 == 0 or abs((complex(omega2) / complex(omega1)).imag) < 1e-12:
        raise DegenerateLattice("generators are dependent over the reals")
    return _build(omega1, omega2, depth)


def eisenstein_invariants(data: EllipticData, depth: int | None = None) -> tuple[complex, complex]:
    """(g2, g3) from row-summed Eisenstein series G4, G6 over |m| <= depth rows."""
    if depth is not None and depth != data.series_depth:
        data = _build(data.omega1, data.omega2, depth)
    u1 = data._w[0]
    _, c, _ = _eta_terms(data)
    G4 = (PI / u1) ** 4 * (1.0 / 45.0 + np.sum(c**2 - (2.0 / 3.0) * c))
    G6 = (PI / u1) ** 6 * (2.0 / 945.0 + np.sum(c**3 - c**2 + (2.0 / 15.0) * c))
    return complex(60 * G4), complex(140 * G6)


def eisenstein_direct(omega1: complex, omega2: complex, N: int) -> tuple[complex, complex]:
    """Plain truncated sums over |m|, |n| <= N (slowly convergent; for comparison)."""
    m, n = np.meshgrid(np.arange(-N, N + 1), np.arange(-N, N + 1))
    w = (m * omega1 + n * omega2).ravel()
    w = w[w != 0]
    return complex(60 * np.sum(w**-4.0)), complex(140 * np.sum(w**-6.0))


# special functions -------------------------------------------------------------------

def _scalar_or_array(z, out):
    return complex(out) if np.ndim(z) == 0 else out


def wp(data: EllipticData, z):
    z0, _, _ = _reduce_point(data, z)
    _check_not_lattice(data, z0)
    _, csc2, _ = _row_sums(data, z0)
    u1 = data._w[0]
    out = (PI / u1) ** 2 * np.sum(csc2, axis=-1) - data._c
    return _scalar_or_array(z, out)


def wp_prime(data: EllipticData, z):
    z0, _, _ = _reduce_point(data, z)
    _check_not_lattice(data, z0)
    cot, csc2, _ = _row_sums(data, z0)
    u1 = data._w[0]
    out = -2 * (PI / u1) ** 3 * np.sum(cot * csc2, axis=-1)
    return _scalar_or_array(z, out)


def zeta_w(data: EllipticData, z):
    z0, a, b = _reduce_point(data, z)
    _check_not_lattice(data, z0)
    cot, _, m = _row_sums(data, z0)
    cot_m, _, mm = _eta_terms(data)
    u1 = data._w[0]
    # pair cot(pi(v - m tau)) with cot(pi m tau) for m != 0
    shifted = np.sum(cot[..., m != 0], axis=-1) + np.sum(cot_m)
    out = (PI / u1) * (cot[..., m == 0][..., 0] + shifted) + data._c * z0
    e1, e2 = data._eta_red
    out = out + a * e1 + b * e2
    return _scalar_or_array(z, out)


def sigma_w(data: EllipticData, z):
    """sigma(z); zero exactly at lattice points."""
    z0, a, b = _reduce_point(data, z)
    u1, u2 = data._w
    tau = u2 / u1
    v = np.asarray(z0, dtype=complex)[..., None] / u1
    k = np.arange(1, data.series_depth + 1)
    p = np.exp(2j * PI * k * tau)
    e = np.exp(2j * PI * v)
    prod = np.prod((1 - p * e) * (1 - p / e) / (1 - p) ** 2, axis=-1)
    base = (u1 / PI) * np.exp(data._c * z0**2 / 2) * np.sin(PI * v[..., 0]) * prod
    e1, e2 = data._eta_red
    w = a * u1 + b * u2
    eta = a * e1 + b * e2
    eps = np.where((a + b + a * b) % 2 == 0, 1.0, -1.0)
    out = eps * np.exp(eta * (z0 + w / 2)) * base
    return _scalar_or_array(z, out)


# Baker-Akhiezer functions ----------------------------------------------------------------

def _lattice_int_coords(data: EllipticData, omega: complex) -> tuple[int, int]:
    """Integers (a, b) with omega = a omega1 + b omega2."""
    w1, w2 = data.omega1, data.omega2
    det = (w1.conjugate() * w2).imag
    x = (complex(omega).conjugate() * w2).imag / det
    y = (w1.conjugate() * complex(omega)).imag / det
    a, b = round(x), round(y)
    if abs(x - a) > 1e-9 or abs(y - b) > 1e-9:
        raise ValueError(f"{omega} is not a lattice point")
    return a, b


def quasi_period(data: EllipticData, omega: complex) -> complex:
    a, b = _lattice_int_coords(data, omega)
    return a * data.eta1 + b * data.eta2


def baker_akhiezer_phi(data: EllipticData, omega: complex, z, eta: complex | None = None):
    """exp(omega zeta(z) - eta z), doubly periodic for a lattice point omega."""
    if eta is None:
        eta = quasi_period(data, omega)
    out = np.exp(omega * np.asarray(zeta_w(data, z)) - eta * np.asarray(z))
    return _scalar_or_array(z, out)


def baker_akhiezer_psi(data: EllipticData, u: complex, z):
    """sigma(z - u) / sigma(z) * exp(u zeta(z))."""
    u0, _, _ = _reduce_point(data, u)
    _check_not_lattice(data, u0, "u")
    z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
    zz, _, _ = _reduce_point(data, z)
    _check_not_lattice(data, zz)
    out = np.asarray(sigma_w(data, z - u)) / np.asarray(sigma_w(data, z)) * np.exp(u * np.asarray(zeta_w(data, z)))
    return _scalar_or_array(z, out)


def psi_log_derivative(data: EllipticData, u: complex, z):
    """zeta(z - u) - zeta(z) - u wp(z)."""
    return zeta_w(data, z - u) - zeta_w(data, z) - u * wp(data, z)


def zeta_addition_form(data: EllipticData, u: complex, z):
    """zeta(z) - zeta(u) + (wp'(z) + wp'(u)) / (2 (wp(z) - wp(u))), the addition theorem for zeta(z - u)."""
    return zeta_w(data, z) - zeta_w(data, u) + 0.5 * (wp_prime(data, z) + wp_prime(data, u)) / (wp(data, z) - wp(data, u))


# periods of log derivatives ------------------------------------------------------------

def _log_change(f: Callable, a: complex, d: complex, n0: int = 256, max_n: int = 1 << 20,
                vanish_tol: float = 1e-300) -> complex:
    """Change of log f along the segment a -> a + d by continuous tracking."""
    n = n0
    while True:
        t = np.linspace(0.0, 1.0, n + 1)
        vals = np.asarray(f(a + t * d), dtype=complex)
        mags = np.abs(vals)
        if np.any(~np.isfinite(vals)):
            raise VanishingOnPath("non-finite values on the integration path")
        if np.min(mags) < vanish_tol:
            raise VanishingOnPath("function vanishes on the integration path")
        steps = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(steps)) < PI / 4:
            return complex(math.log(mags[-1] / mags[0]), float(np.sum(steps)))
        n *= 2
        if n > max_n:
            raise VanishingOnPath("could not resolve the argument along the path")


def period_vector_of_log_derivative(data: EllipticData, f: Callable, tol: float = 1e-6,
                                    raw: bool = False):
    """Integers (p, q) with the periods of df/f along omega1, omega2 equal to 2 pi i (p, q).

    Paths start at 0.37 (omega1 + omega2) / 2 and run along each generator.
    Raises ValueError when a raw integral is not within ``tol`` of 2 pi i
    times an integer.  With ``raw`` the raw integrals are returned as well.
    """
    z0 = PATH_OFFSET * (data.omega1 + data.omega2) / 2
    out, raws = [], []
    for w in (data.omega1, data.omega2):
        I = _log_change(f, z0, w)
        k = I / (2j * PI)
        n = round(k.real)
        if abs(k - n) > tol:
            raise ValueError(f"period {I} is not 2 pi i times an integer (off by {abs(k - n):.3e})")
        out.append(int(n))
        raws.append(I)
    return (tuple(out), tuple(raws)) if raw else tuple(out)


def lattice_point_from_periods(data: EllipticData, p: int, q: int) -> tuple[int, int]:
    """(a, b) with omega = a omega1 + b omega2 when f = Phi^(omega) has period vector (p, q).

    The periods of dPhi/Phi for omega = a omega1 + b omega2 are
    (b s, -a s) with s = (omega2 eta1 - eta2 omega1) / (2 pi i) = +1 or -1.
    """
    s = round(((data.omega2 * data.eta1 - data.eta2 * data.omega1) / (2j * PI)).real)
    return -q * s, p * s


# verification report --------------------------------------------------------------------

def _random_points(data: EllipticData, n: int, rng: np.random.Generator, margin: float = 0.1):
    """Points of the fundamental cell at distance >= margin * min period from the lattice."""
    u1, u2 = data._w
    mp = min(abs(u1), abs(u2))
    pts = []
    while len(pts) < n:
        x, y = rng.uniform(-0.5, 0.5, 2)
        z = x * u1 + y * u2
        near = [abs(z - (i * u1 + j * u2)) for i in (-1, 0, 1) for j in (-1, 0, 1)]
        if min(near) >= margin * mp:
            pts.append(z)
    return np.array(pts)


def elliptic_verify(omega1: complex = 2.0, omega2: complex = 2j, depth: int = 40, n_points: int = 20,
                    seed: int = 0x5EED) -> dict:
    """Residuals of the defining identities and the genus-one constructions."""
    data = elliptic_from_lattice(omega1, omega2, depth)
    rng = np.random.default_rng(seed)
    zs = _random_points(data, n_points, rng)
    h = 1e-5 * min(abs(data.omega1), abs(data.omega2))
    P, dP, Z, S = wp(data, zs), wp_prime(data, zs), zeta_w(data, zs), sigma_w(data, zs)

    def rel(a, b):
        return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))

    fd_zeta = (zeta_w(data, zs + h) - zeta_w(data, zs - h)) / (2 * h)
    fd_sigma = (sigma_w(data, zs + h) - sigma_w(data, zs - h)) / (2 * h) / S
    fd_wp = (wp(data, zs + h) - wp(data, zs - h)) / (2 * h)
    report = {
        "lattice": data.to_json(),
        "legendre": {"value": [data.legendre.real, data.legendre.imag],
                     "residual": float(min(abs(data.legendre - 2j * PI), abs(data.legendre + 2j * PI)))},
        "ode_residual": float(np.max(np.abs(dP**2 - (4 * P**3 - data.g2 * P - data.g3)))),
        "ode_relative": rel(dP**2, 4 * P**3 - data.g2 * P - data.g3),
        "zeta_prime_vs_wp": rel(fd_zeta, -P),
        "sigma_log_derivative_vs_zeta": rel(fd_sigma, Z),
        "wp_prime_vs_fd": rel(fd_wp, dP),
        "wp_even": rel(wp(data, -zs), P),
        "zeta_shift_eta1": float(np.max(np.abs(zeta_w(data, zs + data.omega1) - Z - data.eta1))),
        "wp_prime_half_period": float(abs(wp_prime(data, data.omega1 / 2))),
    }
    g2b, _ = eisenstein_invariants(data, depth + 10)
    report["g2_depth_consistency"] = float(abs(g2b - data.g2))
    per = {}
    for name, om in (("omega1", data.omega1), ("omega2", data.omega2), ("omega1+omega2", data.omega1 + data.omega2)):
        base = baker_akhiezer_phi(data, om, zs)
        per[name] = max(float(np.max(np.abs(baker_akhiezer_phi(data, om, zs + w) / base - 1)))
                        for w in (data.omega1, data.omega2))
    report["phi_double_periodicity"] = per
    half = data.omega1 / 2
    lhs = P - wp(data, half)
    rhs = baker_akhiezer_psi(data, half, zs) ** 2 / (sigma_w(data, half) ** 2 * baker_akhiezer_phi(data, data.omega1, zs))
    report["half_period_identity"] = rel(rhs, lhs)
    u = 0.3 * data.omega1 + 0.21 * data.omega2
    fd_psi = (baker_akhiezer_psi(data, u, zs + h) - baker_akhiezer_psi(data, u, zs - h)) / (2 * h)
    fd_psi = fd_psi / baker_akhiezer_psi(data, u, zs)
    report["psi_log_derivative"] = rel(fd_psi, psi_log_derivative(data, u, zs))
    report["zeta_addition"] = rel(zeta_addition_form(data, u, zs), zeta_w(data, zs - u))
    vec = {}
    for name, om in (("omega1", data.omega1), ("omega2", data.omega2)):
        vec[name] = list(period_vector_of_log_derivative(data, lambda z, om=om: baker_akhiezer_phi(data, om, z)))
    report["period_vectors"] = vec
    return report
