"""Laurent data of log Phi on a zero-free circle, and Borel-Caratheodory checks.

On a circle |z - c| = r free of zeros, Phi = (z - c)^m exp(phi) with m the
winding number and phi analytic on a thin annulus around the circle.  The
coefficients of phi = sum a_k (z - c)^k come from the discrete Fourier
transform of log(Phi (z - c)^-m), with the branch tracked continuously from
its principal value at angle 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contours import Contour
from .winding import AnalyticConfig, count_zeros, winding_number

__all__ = [
    "ZerosInAnnulus",
    "BranchTrackingError",
    "LaurentProfile",
    "BCReport",
    "laurent_profile",
    "fourier_coefficients",
    "aest_bound",
    "cauchy_bc_bounds",
    "borel_caratheodory_check",
]


class ZerosInAnnulus(ValueError):
    pass


class BranchTrackingError(RuntimeError):
    pass


def aest_bound(R: float) -> float:
    """8 log(e^R + R) / R^2, the bound on |a_2| for e^z - z on |z| <= R."""
    return 8.0 * (R + math.log1p(R * math.exp(-R))) / R**2


@dataclass(frozen=True)
class LaurentProfile:
    m: int
    coeffs: dict
    center: complex
    radius: float
    samples: int
    max_error: float
    bound_report: dict = field(default_factory=dict)

    def a(self, k: int) -> complex:
        return self.coeffs.get(k, 0j)

    def evaluate(self, z) -> np.ndarray:
        """(z - c)^m exp(sum a_k (z - c)^k) for the stored coefficients."""
        w = np.asarray(z, dtype=complex) - self.center
        s = sum(a * w**k for k, a in self.coeffs.items())
        return w**self.m * np.exp(s)

    def to_json(self) -> dict:
        return {"m": self.m, "center": [self.center.real, self.center.imag], "radius": self.radius,
                "samples": self.samples, "max_error": self.max_error,
                "coeffs": {str(k): [a.real, a.imag] for k, a in sorted(self.coeffs.items())},
                "bound_report": self.bound_report}


def _sample_count(K: int, minimum: int = 1024) -> int:
    n = max(minimum, 8 * K)
    return 1 << (n - 1).bit_length()


def _log_samples(phi, center, radius, m, N, cfg):
    """Branch-tracked log(Phi (z - c)^-m) at N equally spaced angles."""
    while True:
        theta = 2 * math.pi * np.arange(N) / N
        z = center + radius * np.exp(1j * theta)
        mant, _, M = phi.scaled(z)
        rot = mant * np.exp(-1j * m * theta)
        steps = np.angle(np.append(rot[1:], rot[0]) / rot)
        if np.max(np.abs(steps)) < math.pi / 2:
            break
        N *= 2
        if N > cfg.max_points:
            raise BranchTrackingError("phase steps stay above pi/2 at the sampling limit")
    closing = float(np.sum(steps))
    if abs(closing) > 1e-6:
        raise BranchTrackingError(f"log branch does not close: total phase {closing:.3e}")
    arg = np.angle(rot[0]) + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    L = np.log(np.abs(mant)) + M - m * math.log(radius) + 1j * arg
    return L, N


def _fft_coeffs(values, radius, K):
    N = len(values)
    F = np.fft.fft(values) / N
    return {k: complex(F[k % N]) / radius**k for k in range(-K, K + 1)}


def cauchy_bc_bounds(phi, center: complex, R: float, K: int, samples: int = 4096) -> dict:
    """Borel-Caratheodory plus Cauchy bounds on |a_k| for a zero-free disc.

    With A = sup log|Phi| on |z - c| = R minus log|Phi(c)|, the function
    phi - phi(c) has real part at most A, so |a_k| <= 2^(k+1) A / R^k.
    """
    z = center + R * np.exp(2j * math.pi * np.arange(samples) / samples)
    mant, _, M = phi.scaled(z)
    sup_log = float(np.max(np.log(np.abs(mant)) + M))
    m0, _, M0 = phi.scaled(np.array([center]))
    log_c = float(math.log(abs(m0[0])) + M0[0])
    A = sup_log - log_c
    return {"R": R, "sup_log_abs": sup_log, "log_abs_center": log_c,
            "bounds": {str(k): 2.0 ** (k + 1) * A / R**k for k in range(1, K + 1)}}


def laurent_profile(phi, center: complex, radius: float, K: int, cfg: AnalyticConfig | None = None,
                    annulus_width: float = 0.02) -> LaurentProfile:
    """Laurent data of log Phi on the circle |z - center| = radius.

    Zeros in the annulus radius*(1 -/+ annulus_width) raise ZerosInAnnulus.
    The reconstruction error is measured at the midpoints between samples,
    as max |(z - c)^m exp(series) / Phi - 1|.  When the closed disc is
    zero-free and regular (m = 0, no excluded point inside) the report
    includes the Borel-Caratheodory/Cauchy bounds at R = radius; it always
    includes the bound 8 log(e^R + R)/R^2 at R = radius and R = 17.
    """
    cfg = cfg or AnalyticConfig()
    center = complex(center)
    ring = Contour.annulus(center, radius * (1 - annulus_width), radius * (1 + annulus_width))
    n_ring = count_zeros(phi, ring, cfg)
    if n_ring != 0:
        raise ZerosInAnnulus(f"{n_ring} zeros (with multiplicity) near the circle of radius {radius}")
    m = winding_number(phi, Contour.circle(center, radius), cfg)
    L, N = _log_samples(phi, center, radius, m, _sample_count(K), cfg)
    coeffs = _fft_coeffs(L, radius, K)
    # reconstruction at midpoints
    theta = 2 * math.pi * (np.arange(N) + 0.5) / N
    w = radius * np.exp(1j * theta)
    mant, _, M = phi.scaled(center + w)
    series = sum(a * w**k for k, a in coeffs.items())
    log_ratio = series + m * np.log(w) - (np.log(mant) + M)
    max_error = float(np.max(np.abs(np.expm1(log_ratio))))
    report = {"aest_at_radius": aest_bound(radius), "aest_at_17": aest_bound(17.0)}
    regular = not any(abs(p - center) <= radius for p in getattr(phi, "excluded_points", ()))
    if m == 0 and regular:
        report["cauchy_bc"] = cauchy_bc_bounds(phi, center, radius, min(K, 8))
    return LaurentProfile(m, coeffs, center, radius, N, max_error, report)


def fourier_coefficients(phi, center: complex, radius: float, K: int, m: int = 0,
                         samples: int | None = None) -> dict:
    """Laurent coefficients of Phi (z - c)^-m itself, by the FFT on the circle."""
    N = samples or _sample_count(K)
    theta = 2 * math.pi * np.arange(N) / N
    w = radius * np.exp(1j * theta)
    mant, _, M = phi.scaled(complex(center) + w)
    vals = mant * np.exp(M) * w ** (-m)
    return _fft_coeffs(vals, radius, K)


@dataclass(frozen=True)
class BCReport:
    lhs: float
    rhs: float
    sup_re: float
    center_abs: float
    r: float
    R: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "sup_re": self.sup_re, "center_abs": self.center_abs,
                "r": self.r, "R": self.R, "holds": self.holds, "margin": self.margin}


def borel_caratheodory_check(f, r: float, R: float, samples: int = 4096) -> BCReport:
    """Both sides of sup_{|w|<=r}|f| <= 2r/(R-r) sup_{|w|<=R} Re f + (R+r)/(R-r) |f(0)|.

    ``f`` is a vectorized evaluator analytic on |w| <= R.  Suprema over the
    discs are taken on the boundary circles (maximum principle), sampled
    densely.
    """
    if not 0 <= r < R:
        raise ValueError("need 0 <= r < R")
    th = 2 * math.pi * np.arange(samples) / samples
    inner = np.asarray(f(r * np.exp(1j * th)), dtype=complex) if r > 0 else np.asarray(f(np.zeros(1, complex)))
    outer = np.asarray(f(R * np.exp(1j * th)), dtype=complex)
    f0 = abs(complex(np.asarray(f(np.zeros(1, dtype=complex)))[0]))
    sup_re = float(np.max(outer.real))
    lhs = float(np.max(np.abs(inner)))
    rhs = 2 * r / (R - r) * sup_re + (R + r) / (R - r) * f0
    return BCReport(lhs, rhs, sup_re, f0, r, R)
