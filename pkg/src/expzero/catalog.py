"""Canned inputs: the worked examples used by tests, demos and the CLI."""

from __future__ import annotations

import cmath

import numpy as np

from .analytic.functions import AnalyticFunction, CurveParametrization, PhiFunction
from .classifier import SurfaceSpec, surface_ring
from .exactpoly import PolyRing

__all__ = [
    "SURFACES",
    "surface",
    "phi_a",
    "phi_b",
    "phi_exx",
    "exp_minus_z",
    "exp_affine",
    "monomial",
]


def _gens():
    R = surface_ring()
    return R, R.gens


def nz() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 + X2 - 1, Xh1 * Xh2 - 1)


def ex() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 + X2 - 1, X1 * X2 - Xh1 - Xh2)


def d2() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 + X2 - 1, Xh1 * Xh2 - R.symbol("E"))


def d31() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 + X2 - 1, X1 - R.symbol("E") + Xh1 * Xh2)


def d31_variant() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 + X2 - 1, X1 - X1**2 - R.symbol("E") + Xh1 * Xh2)


def hyperbola() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1 * X2 - 1, Xh1 * Xh2 - 1)


def fermat() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec.curve_pair(X1**9 + X2**9 - 1, Xh1 + Xh2 - 1)


def point_fiber() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec("point_fiber", (X1, X2))


def full_projection() -> SurfaceSpec:
    R, (X1, X2, Xh1, Xh2) = _gens()
    return SurfaceSpec("full_projection", (Xh1 - 1, Xh2 - 1))


SURFACES = {
    "NZ": nz,
    "EX": ex,
    "d2": d2,
    "d31": d31,
    "d31_variant": d31_variant,
    "hyperbola": hyperbola,
    "fermat": fermat,
    "point_fiber": point_fiber,
    "full_projection": full_projection,
}


def surface(name: str) -> SurfaceSpec:
    return SURFACES[name]()


# Phi functions ---------------------------------------------------------------

def _two_var_ring():
    return PolyRing(("X1", "X2", "Xh1", "Xh2"), ("Xh1", "Xh2"))


def phi_a() -> PhiFunction:
    """e^z + e^(1/z) - 1 from X1*X2 = 1, Xh1 + Xh2 = 1 with xi = (z, 1/z)."""
    R = _two_var_ring()
    X1, X2, Xh1, Xh2 = R.gens
    param = CurveParametrization.from_strings(([0, 1], [1]), ([1], [0, 1]))
    return PhiFunction(Xh1 + Xh2 - 1, param)


def phi_b() -> PhiFunction:
    """e^z + e^(z^2) - 1 from X2 = X1^2, Xh1 + Xh2 = 1 with xi = (z, z^2)."""
    R = _two_var_ring()
    X1, X2, Xh1, Xh2 = R.gens
    param = CurveParametrization.from_strings(([0, 1], [1]), ([0, 0, 1], [1]))
    return PhiFunction(Xh1 + Xh2 - 1, param)


def phi_exx() -> PhiFunction:
    """The reduced curve Yh^2 + e - Y Yh (1 - Y) = 0 along (z, e^z)."""
    R = PolyRing(("X1", "Xh1"), ("Xh1",))
    X, Xh = R.gens
    F = Xh**2 + R.symbol("E") - X * Xh + X**2 * Xh
    param = CurveParametrization.from_strings(([0, 1], [1]))
    return PhiFunction(F, param)


def exp_minus_z() -> PhiFunction:
    """e^z - z as F = Xh1 - X1 with xi = z."""
    R = PolyRing(("X1", "Xh1"), ("Xh1",))
    X, Xh = R.gens
    return PhiFunction(Xh - X, CurveParametrization.from_strings(([0, 1], [1])))


def exp_affine(a: complex, b: complex) -> AnalyticFunction:
    """exp(a z + b)."""
    return AnalyticFunction(lambda z: np.exp(a * z + b), lambda z: a * np.exp(a * z + b), name="exp_affine")


def monomial(k: int) -> AnalyticFunction:
    if k >= 0:
        return AnalyticFunction(lambda z: z**k, lambda z: k * z ** (k - 1) if k else 0 * z, name=f"z^{k}")
    return AnalyticFunction(lambda z: z**k, lambda z: k * z ** (k - 1), excluded_points=[0], name=f"z^{k}")


def z2_exp_inv() -> AnalyticFunction:
    """z^2 e^(1/z), essential singularity at 0."""
    return AnalyticFunction(lambda z: z**2 * np.exp(1 / z),
                            lambda z: (2 * z - 1) * np.exp(1 / z),
                            excluded_points=[0], name="z^2 exp(1/z)")


# reference values -------------------------------------------------------------

UNIT_CIRCLE_ZERO = complex(-0.08285557733006468223, 0.9965615652358371338)
EXP_MINUS_Z_ZERO = complex(0.31813150520476413, 1.3372357014306895)
PHI_B_SEED_GOOD = -cmath.sqrt(100 * cmath.pi) * (1 + 1j)
PHI_B_SEED_CHAOS = cmath.sqrt(100 * cmath.pi) * (1 + 1j)
