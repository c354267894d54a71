"""Zeros on a circle where the trace of Phi is real.

For e^z + e^(1/z) - 1 the values on |z| = 1 are real, because Phi(1/z) =
Phi(z) and Phi(conj z) = conj Phi(z).  A sign change of the trace t ->
Phi(r e^{it}) on [0, pi] then brackets a zero, and mirroring t -> -t gives
its conjugate partner.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .winding import AnalyticConfig
from .isolate import newton_refine

__all__ = ["TraceNotReal", "CircleZero", "circle_trace", "circle_trace_bisect"]


class TraceNotReal(ValueError):
    pass


class CircleZero(complex):
    """A complex zero that also remembers its angle and Newton data."""

    t: float
    residual: float
    newton_iters: int


def _value(phi, z):
    mant, _, M = phi.scaled(np.asarray(z, dtype=complex))
    return mant * np.exp(M)


def circle_trace(phi, radius: float, center: complex = 0j, samples: int = 1025):
    """Angles t in [0, pi] and the values Phi(center + radius e^{it})."""
    t = np.linspace(0.0, math.pi, samples)
    return t, _value(phi, center + radius * np.exp(1j * t))


def circle_trace_bisect(phi, radius: float = 1.0, assume_real: bool = True, center: complex = 0j,
                        samples: int = 1025, xtol: float = 1e-12, imag_tol: float = 1e-10,
                        polish: bool = True, cfg: AnalyticConfig | None = None) -> list[complex]:
    """Zeros of Phi on a circle found from sign changes of the real trace.

    With ``assume_real`` the trace is checked to be real (max |Im| below
    ``imag_tol`` relative to max(1, |Phi|)) and TraceNotReal is raised
    otherwise.  Brackets are narrowed with Brent's method to ``xtol`` in t,
    then optionally polished by Newton in z (the polished point is kept only
    if it stays on the circle to 1e-9).  Returned zeros are sorted by angle
    in (-pi, pi], each with its mirror image t -> -t.
    """
    cfg = cfg or AnalyticConfig()
    t, vals = circle_trace(phi, radius, center, samples)
    if assume_real:
        bad = np.abs(vals.imag) / np.maximum(1.0, np.abs(vals))
        if np.max(bad) >= imag_tol:
            raise TraceNotReal(f"trace has imaginary part {np.max(bad):.3e} on the circle of radius {radius}")
    re = vals.real

    def g(s):
        return float(_value(phi, np.array([center + radius * np.exp(1j * s)]))[0].real)

    angles = []
    for i in range(len(t) - 1):
        a, b = re[i], re[i + 1]
        if a == 0.0:
            angles.append(float(t[i]))
        elif a * b < 0:
            angles.append(brentq(g, float(t[i]), float(t[i + 1]), xtol=xtol, rtol=4 * np.finfo(float).eps))
    if re[-1] == 0.0:
        angles.append(float(t[-1]))
    full = sorted(set(angles) | {-s for s in angles if 0.0 < s < math.pi})
    out = []
    for s in full:
        z = center + radius * complex(math.cos(s), math.sin(s))
        iters, residual = 0, float(abs(_value(phi, np.array([z]))[0]))
        if polish:
            res = newton_refine(phi, z, cfg)
            if res.converged and abs(abs(res.z - center) - radius) < 1e-9:
                z, iters, residual = res.z, res.iters, res.residual
        zero = CircleZero(z)
        zero.t, zero.residual, zero.newton_iters = s, residual, iters
        out.append(zero)
    return out
