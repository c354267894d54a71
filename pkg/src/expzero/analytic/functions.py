"""Analytic functions Phi(z) = F(xi(z), exp(xi(z))) and plain wrappers.

Every function object exposes ``scaled(z) -> (mant, dmant, logscale)`` with
``Phi = mant * exp(logscale)`` and ``Phi' = dmant * exp(logscale)``.  The
common real scale keeps ``exp`` of large arguments from overflowing, which
matters for the argument principle (only phases are needed) and for Newton
(only the ratio ``mant / dmant``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..exactpoly import CompiledPoly, LaurentPoly, MultiPoly, NumericValuation, PolyRing

__all__ = [
    "ExcludedPointError",
    "CurveParametrization",
    "PhiFunction",
    "AnalyticFunction",
    "phi_eval",
    "phi_prime",
    "phi_from_json",
    "phi_to_json",
]


class ExcludedPointError(ValueError):
    pass


def _univariate_coeffs(p: LaurentPoly, valuation: NumericValuation) -> np.ndarray:
    """Coefficients low-to-high of a polynomial in one variable."""
    if len(p.variables) != 1:
        raise ValueError("parametrization entries must be polynomials in one variable")
    if not p.is_polynomial():
        raise ValueError("parametrization entries must not have negative exponents")
    deg = p.degree(p.variables[0])
    out = np.zeros(deg + 1, dtype=complex)
    for exps, s in p.terms():
        out[exps[0]] += s.evaluate(valuation)
    return out


class CurveParametrization:
    """Rational coordinate functions xi_i = num_i / den_i of one variable z."""

    def __init__(self, xi: Sequence[tuple[LaurentPoly, LaurentPoly]],
                 valuation: NumericValuation | None = None,
                 extra_excluded: Sequence[complex] = ()):
        self.valuation = valuation or NumericValuation()
        self.xi = tuple(xi)
        self.n = len(self.xi)
        self._num = []
        self._den = []
        roots: list[complex] = []
        for num, den in self.xi:
            nc = _univariate_coeffs(num, self.valuation)
            dc = _univariate_coeffs(den, self.valuation)
            if not np.any(dc):
                raise ValueError("denominator must be a nonzero polynomial")
            self._num.append(np.polynomial.Polynomial(nc))
            self._den.append(np.polynomial.Polynomial(dc))
            roots.extend(self._den_roots(self._den[-1]))
        pts: list[complex] = []
        for r in list(roots) + [complex(p) for p in extra_excluded]:
            if all(abs(r - q) > 1e-12 * max(1.0, abs(r)) for q in pts):
                pts.append(r)
        self.excluded_points = tuple(sorted(pts, key=lambda w: (w.real, w.imag)))

    @staticmethod
    def _den_roots(den: np.polynomial.Polynomial) -> list[complex]:
        if den.degree() < 1:
            return []
        d1 = den.deriv()
        out = []
        for r in den.roots():
            r = complex(r)
            for _ in range(30):
                dv = d1(r)
                if dv == 0:
                    break
                step = den(r) / dv
                r -= step
                if abs(step) < 1e-15 * max(1.0, abs(r)):
                    break
            scale = float(np.sum(np.abs(den.coef) * max(1.0, abs(r)) ** np.arange(len(den.coef))))
            if abs(den(r)) > 1e-10 * scale:
                raise ArithmeticError(f"denominator root {r} not verified to 1e-10")
            out.append(r)
        return out

    @classmethod
    def from_strings(cls, *entries, valuation=None):
        """Build from (numerator, denominator) coefficient lists, low degree first."""
        R = PolyRing(("z",))
        (z,) = R.gens
        xi = []
        for num, den in entries:
            n = sum((R.const(c) * z**k for k, c in enumerate(num)), R.zero())
            d = sum((R.const(c) * z**k for k, c in enumerate(den)), R.zero())
            xi.append((n, d))
        return cls(xi, valuation)

    def values(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """xi(z) and xi'(z), each of shape (len(z), n)."""
        z = np.asarray(z, dtype=complex)
        xs = np.empty(z.shape + (self.n,), dtype=complex)
        ds = np.empty_like(xs)
        for i, (num, den) in enumerate(zip(self._num, self._den)):
            nv, dv = num(z), den(z)
            xs[..., i] = nv / dv
            ds[..., i] = (num.deriv()(z) * dv - nv * den.deriv()(z)) / dv**2
        return xs, ds

    def to_json(self) -> dict:
        return {"xi": [{"num": n.to_json(), "den": d.to_json()} for n, d in self.xi]}

    @classmethod
    def from_json(cls, data, valuation=None, extra_excluded=()):
        xi = [(LaurentPoly.from_json(e["num"]), LaurentPoly.from_json(e["den"])) for e in data["xi"]]
        return cls(xi, valuation, extra_excluded)


class _ExpPoly:
    """Compiled F split into X exponents A, Xhat exponents K and coefficients."""

    def __init__(self, poly: LaurentPoly, n: int, valuation: NumericValuation):
        cp = CompiledPoly.from_poly(poly, valuation)
        self.coeffs = cp.coeffs
        self.A = cp.exps[:, :n]
        self.K = cp.exps[:, n:].astype(float)

    def log_scale(self, xs: np.ndarray) -> np.ndarray:
        if len(self.coeffs) == 0:
            return np.zeros(xs.shape[:-1])
        return np.max((xs @ self.K.T).real, axis=-1)

    def scaled(self, xs: np.ndarray, M: np.ndarray) -> np.ndarray:
        if len(self.coeffs) == 0:
            return np.zeros(xs.shape[:-1], dtype=complex)
        expo = xs @ self.K.T - M[..., None]
        monos = np.prod(xs[..., None, :] ** self.A, axis=-1) * np.exp(expo)
        return monos @ self.coeffs


@dataclass(frozen=True)
class PhiFunction:
    """Phi(z) = F(xi_1, ..., xi_n, exp(xi_1), ..., exp(xi_n)).

    ``F`` has ``2n`` variables: the additive ones first, then their
    exponential partners.  The derivative uses exact partial derivatives:
    ``Phi' = sum_i (dF/dX_i + Xh_i dF/dXh_i)(xi, e^xi) * xi_i'``.
    """

    F: MultiPoly
    param: CurveParametrization
    valuation: NumericValuation = field(default_factory=NumericValuation)
    clearance: float = 1e-6

    def __post_init__(self):
        n = self.param.n
        if len(self.F.variables) != 2 * n:
            raise ValueError(f"F has {len(self.F.variables)} variables; expected {2 * n}")
        main = _ExpPoly(self.F, n, self.valuation)
        parts = []
        for i in range(n):
            x, xh = self.F.variables[i], self.F.variables[n + i]
            R = PolyRing(self.F.variables, self.F.unit_vars, polynomial=False)
            d = self.F.diff(x) + R.gen(xh) * self.F.diff(xh)
            parts.append(_ExpPoly(d, n, self.valuation))
        object.__setattr__(self, "_main", main)
        object.__setattr__(self, "_parts", tuple(parts))

    @property
    def excluded_points(self) -> tuple[complex, ...]:
        return self.param.excluded_points

    def check_point(self, z: np.ndarray):
        pts = np.asarray(self.excluded_points)
        if pts.size:
            d = np.min(np.abs(np.asarray(z, dtype=complex)[..., None] - pts), axis=-1)
            if np.any(d < self.clearance):
                raise ExcludedPointError("evaluation within clearance of an excluded point")

    def scaled(self, z):
        z = np.asarray(z, dtype=complex)
        xs, ds = self.param.values(z)
        M = self._main.log_scale(xs)
        mant = self._main.scaled(xs, M)
        dmant = np.zeros_like(mant)
        for i, part in enumerate(self._parts):
            dmant = dmant + part.scaled(xs, M) * ds[..., i]
        return mant, dmant, M

    def __call__(self, z):
        self.check_point(z)
        mant, _, M = self.scaled(z)
        return mant * np.exp(M)

    def derivative(self, z):
        self.check_point(z)
        _, dmant, M = self.scaled(z)
        return dmant * np.exp(M)


class AnalyticFunction:
    """Wrap a plain vectorized callable and its derivative."""

    def __init__(self, f: Callable, df: Callable, excluded_points: Sequence[complex] = (),
                 clearance: float = 1e-6, name: str = ""):
        self.f = f
        self.df = df
        self.excluded_points = tuple(complex(p) for p in excluded_points)
        self.clearance = clearance
        self.name = name

    def check_point(self, z):
        pts = np.asarray(self.excluded_points)
        if pts.size:
            d = np.min(np.abs(np.asarray(z, dtype=complex)[..., None] - pts), axis=-1)
            if np.any(d < self.clearance):
                raise ExcludedPointError("evaluation within clearance of an excluded point")

    def scaled(self, z):
        z = np.asarray(z, dtype=complex)
        return np.asarray(self.f(z), dtype=complex), np.asarray(self.df(z), dtype=complex), np.zeros(z.shape)

    def __call__(self, z):
        self.check_point(z)
        return np.asarray(self.f(np.asarray(z, dtype=complex)), dtype=complex)

    def derivative(self, z):
        self.check_point(z)
        return np.asarray(self.df(np.asarray(z, dtype=complex)), dtype=complex)

    @classmethod
    def polynomial(cls, roots: Sequence[complex], lead: complex = 1.0):
        p = np.polynomial.Polynomial.fromroots(roots) * lead
        dp = p.deriv()
        return cls(lambda z: p(z), lambda z: dp(z), name="poly")

    def __repr__(self):
        return f"AnalyticFunction({self.name or self.f!r})"


def phi_eval(phi, z: complex) -> complex:
    """Value of phi at one point; raises near excluded points."""
    return complex(np.asarray(phi(np.array([z])))[0])


def phi_prime(phi, z: complex) -> complex:
    return complex(np.asarray(phi.derivative(np.array([z])))[0])


def log_abs(phi, z) -> np.ndarray:
    mant, _, M = phi.scaled(z)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(mant)) + M


def _valuation_from_json(data) -> NumericValuation:
    vals = {k: complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for k, v in (data or {}).items()}
    return NumericValuation(vals)


def phi_from_json(data) -> PhiFunction:
    """Build Phi from ``{"F": poly, "xi": [{"num", "den"}], "excluded": [[re, im]], "valuation": {...}}``.

    F has variables X1..Xn followed by Xh1..Xhn; each xi entry is a pair of
    polynomials in ``z``.  Valuation values are numbers or ``[re, im]``.
    """
    if isinstance(data, str):
        data = json.loads(data)
    valuation = _valuation_from_json(data.get("valuation"))
    extra = [complex(p[0], p[1]) for p in data.get("excluded", [])]
    param = CurveParametrization.from_json(data, valuation, extra)
    F = LaurentPoly.from_json(data["F"])
    if not isinstance(F, MultiPoly):
        raise ValueError("F must be a polynomial")
    return PhiFunction(F, param, valuation, float(data.get("clearance", 1e-6)))


def phi_to_json(phi: PhiFunction) -> dict:
    out = {"F": phi.F.to_json()}
    out.update(phi.param.to_json())
    vals = {k: [v.real, v.imag] for k, v in sorted(phi.valuation.values.items()) if k != "E"}
    if vals:
        out["valuation"] = vals
    return out
