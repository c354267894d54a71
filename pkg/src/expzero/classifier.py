"""Case analysis for surfaces in C^2 x C*^2 given in reduced (F0, F) form.

Coordinates are ``X1, X2`` (additive) and ``Xh1, Xh2`` (multiplicative,
nonzero).  A line of rational slope ``m1*X1 + m2*X2 = c`` is handled by
back-substitution onto ``(Y, Yh)``::

    X1 = a1*c + m2*Y,          X2 = a2*c - m1*Y,
    Xh1 = chat**a1 * Yh**m2,   Xh2 = chat**a2 * Yh**(-m1),

which turns the second generator ``F`` into a Laurent polynomial ``G(Y, Yh)``
whose shape decides the subcase.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactpoly import (
    ExactScalar,
    LaurentPoly,
    MultiPoly,
    NumericValuation,
    PolyRing,
)

__all__ = [
    "SURFACE_VARS",
    "UNIT_VARS",
    "BACKSUB_VARS",
    "SurfaceSpec",
    "LineSpec",
    "BackSubResult",
    "ClassificationResult",
    "UnsupportedSurface",
    "surface_ring",
    "detect_rational_slope",
    "back_substitute",
    "classify_surface",
    "resolve_d31_points",
    "bezout_coefficients",
]

SURFACE_VARS = ("X1", "X2", "Xh1", "Xh2")
UNIT_VARS = ("Xh1", "Xh2")
BACKSUB_VARS = ("Y", "Yh")

VERDICTS = {
    "a": "single_point",
    "b": "infinite_dense",
    "c": "infinite_dense",
    "d1": "empty",
    "d2": "infinite_dense",
    "d31": "nonempty_finite",
    "d32": "infinite_dense",
}


class UnsupportedSurface(ValueError):
    """Input outside the reduced shapes this classifier can decide."""


def surface_ring() -> PolyRing:
    return PolyRing(SURFACE_VARS, UNIT_VARS)


def backsub_ring() -> PolyRing:
    return PolyRing(BACKSUB_VARS, ("Yh",), polynomial=False)


def _as_surface_poly(p: LaurentPoly) -> MultiPoly:
    if p.variables != SURFACE_VARS:
        p = p.restrict(SURFACE_VARS, UNIT_VARS) if set(p.variables) - set(SURFACE_VARS) else p.embed(SURFACE_VARS, UNIT_VARS)
    if not p.is_polynomial():
        raise UnsupportedSurface("generators must be polynomials")
    return MultiPoly(p.variables, dict(p._terms), UNIT_VARS)


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str  # point_fiber | full_projection | curve_pair
    generators: tuple[MultiPoly, ...]

    def __post_init__(self):
        if self.kind not in ("point_fiber", "full_projection", "curve_pair"):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        object.__setattr__(self, "generators", tuple(_as_surface_poly(g) for g in self.generators))

    @classmethod
    def curve_pair(cls, F0: LaurentPoly, F: LaurentPoly) -> "SurfaceSpec":
        return cls("curve_pair", (F0, F))

    @property
    def F0(self) -> MultiPoly:
        return self.generators[0]

    @property
    def F(self) -> MultiPoly:
        return self.generators[1]

    def to_json(self) -> dict:
        if self.kind == "curve_pair":
            return {"kind": self.kind, "F0": self.F0.to_json(), "F": self.F.to_json()}
        return {"kind": self.kind, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data) -> "SurfaceSpec":
        if isinstance(data, str):
            data = json.loads(data)
        kind = data["kind"]
        if kind == "curve_pair":
            gens = (LaurentPoly.from_json(data["F0"]), LaurentPoly.from_json(data["F"]))
        else:
            gens = tuple(LaurentPoly.from_json(g) for g in data["generators"])
        return cls(kind, gens)


@dataclass(frozen=True)
class LineSpec:
    m1: int
    m2: int
    c: ExactScalar
    a1: int
    a2: int
    chat: ExactScalar

    def __post_init__(self):
        if (self.m1, self.m2) == (0, 0) or math.gcd(self.m1, self.m2) != 1:
            raise ValueError("m1, m2 must be coprime and not both zero")
        if self.a1 * self.m1 + self.a2 * self.m2 != 1:
            raise ValueError("a1*m1 + a2*m2 must equal 1")

    def c_value(self, valuation: NumericValuation | None = None) -> complex:
        return self.c.evaluate(valuation)

    def valuation(self, base: NumericValuation | None = None) -> NumericValuation:
        """Valuation with CHAT (and C, when symbolic) tied to this line."""
        base = base or NumericValuation()
        if "CHAT" in dict(self.chat.sym_powers):
            cval = self.c_value(base)
            return base.with_values(CHAT=cmath.exp(cval))
        return base

    def to_json(self) -> dict:
        return {"m1": self.m1, "m2": self.m2, "a1": self.a1, "a2": self.a2,
                "c": self.c.to_json(), "chat": self.chat.to_json()}


def bezout_coefficients(m1: int, m2: int) -> tuple[int, int]:
    """Integers (a1, a2) with a1*m1 + a2*m2 = 1, |a1| minimal, ties to a1 >= 0."""
    g, x, y = _egcd(m1, m2)
    if abs(g) != 1:
        raise ValueError("m1 and m2 must be coprime")
    x, y = x * g, y * g
    if m2 == 0:
        return x, 0
    step = abs(m2)
    r = x % step
    a1 = min((r, r - step), key=lambda a: (abs(a), a < 0))
    a2 = (1 - a1 * m1) // m2
    return a1, a2


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _rational_ratio(num: LaurentPoly, den: LaurentPoly) -> Fraction | None:
    """q in Q with num == q*den exactly, else None (both constant polys)."""
    if den.is_zero():
        return None
    (exps, lead), *_ = list(den.terms())
    match = [s for e, s in num.terms() if s.sym_powers == lead.sym_powers]
    if not match:
        return None
    q = match[0] / ExactScalar(lead.re, lead.im)
    if not q.is_rational():
        return None
    if num != den.scale(q):
        return None
    return q.re


def detect_rational_slope(F0: LaurentPoly) -> LineSpec | None:
    """LineSpec when F0 is a line m1*X1 + m2*X2 = c with rational slope."""
    F0 = _as_surface_poly(F0)
    if F0.depends_on("Xh1") or F0.depends_on("Xh2"):
        raise UnsupportedSurface("F0 must involve X1, X2 only")
    if F0.is_constant():
        raise UnsupportedSurface("F0 must be nonconstant")
    if F0.total_degree(("X1", "X2")) != 1:
        return None
    alpha = F0.coefficient((1, 0, 0, 0))
    beta = F0.coefficient((0, 1, 0, 0))
    gamma = F0.coefficient((0, 0, 0, 0))
    if alpha.is_zero():
        kappa, ms = beta, (0, 1)
    elif beta.is_zero():
        kappa, ms = alpha, (1, 0)
    else:
        q = _rational_ratio(beta, alpha)
        if q is None:
            return None
        ms = (q.denominator, q.numerator)
        kappa = alpha.scale(ExactScalar(Fraction(1, q.denominator)))
    k = kappa.as_scalar()
    if k is None:
        raise UnsupportedSurface("line coefficient content is not a single exact scalar")
    m1, m2 = ms
    if m1 < 0 or (m1 == 0 and m2 < 0):
        m1, m2, k = -m1, -m2, -k
    cpoly = (-gamma).scale(k.inverse())
    c = cpoly.as_scalar()
    if c is None:
        raise UnsupportedSurface("line constant is not a single exact scalar")
    if c.is_integer():
        chat = ExactScalar.symbol("E", int(c.re)) if c.re else ExactScalar(1)
    else:
        chat = ExactScalar.symbol("CHAT")
    a1, a2 = bezout_coefficients(m1, m2)
    return LineSpec(m1, m2, c, a1, a2, chat)


@dataclass(frozen=True)
class BackSubResult:
    line: LineSpec
    G: LaurentPoly
    images: tuple[LaurentPoly, ...]
    F: MultiPoly
    clearing_exponent: int
    content: ExactScalar

    def h_of_Y(self) -> LaurentPoly | None:
        """G as a polynomial in Y alone, when G has no Yh dependence."""
        if self.G.is_zero() or self.G.depends_on("Yh"):
            return None
        return self.G

    def to_json(self) -> dict:
        return {"line": self.line.to_json(), "G": self.G.to_json(),
                "clearing_exponent": self.clearing_exponent,
                "content": self.content.to_json()}


def line_images(line: LineSpec) -> tuple[LaurentPoly, ...]:
    R = backsub_ring()
    Y, Yh = R.gens
    c = R.const(line.c)
    return (
        c * line.a1 + Y * line.m2,
        c * line.a2 - Y * line.m1,
        R.const(line.chat ** line.a1) * Yh ** line.m2,
        R.const(line.chat ** line.a2) * Yh ** (-line.m1),
    )


def inverse_images(line: LineSpec) -> tuple[LaurentPoly, LaurentPoly]:
    """Y = a2*X1 - a1*X2 and Yh = Xh1**a2 * Xh2**(-a1) over the surface ring."""
    R = PolyRing(SURFACE_VARS, UNIT_VARS, polynomial=False)
    X1, X2, Xh1, Xh2 = R.gens
    return X1 * line.a2 - X2 * line.a1, Xh1 ** line.a2 * Xh2 ** (-line.a1)


def _leading_key(item):
    (exps, syms), _ = item
    return (exps[1], exps[0], sum(abs(k) for _, k in syms), syms)


def normalize_backsub(G: LaurentPoly) -> tuple[LaurentPoly, int, ExactScalar]:
    """Clear Yh powers to minimum 0 and divide out scalar content."""
    if G.is_zero():
        return G, 0, ExactScalar(1)
    shift = -G.min_degree("Yh")
    R = backsub_ring()
    G = G * R.gen("Yh") ** shift if shift else G
    names = sorted(G.symbols())
    low = {n: min(dict(syms).get(n, 0) for (_, syms) in G._terms) for n in names}
    (_, _), lead = max(G._terms.items(), key=_leading_key)
    content = ExactScalar(lead[0], lead[1], low)
    return G.scale(content.inverse()), shift, content


def back_substitute(F: LaurentPoly, line: LineSpec) -> BackSubResult:
    F = _as_surface_poly(F)
    images = line_images(line)
    G, shift, content = normalize_backsub(F.substitute(images))
    return BackSubResult(line, G, images, F, shift, content)


@dataclass
class ClassificationResult:
    case_label: str
    pi_Z_verdict: str
    witness: dict = field(default_factory=dict)
    heuristic_flags: list[str] = field(default_factory=list)

    def __post_init__(self):
        expected = VERDICTS.get(self.case_label)
        if expected is not None and expected != self.pi_Z_verdict:
            raise ValueError(f"case {self.case_label} requires verdict {expected}")

    def to_json(self) -> dict:
        return {"case": self.case_label, "verdict": self.pi_Z_verdict,
                "witness": self.witness, "heuristic_flags": list(self.heuristic_flags)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _unsupported(reason: str) -> ClassificationResult:
    return ClassificationResult("unsupported", "unknown", {"explanation": reason})


def _result(case: str, witness: dict | None = None, flags=()) -> ClassificationResult:
    return ClassificationResult(case, VERDICTS[case], witness or {}, list(flags))


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _point_fiber_coordinate(g: MultiPoly) -> tuple[str, ExactScalar] | None:
    for var, exps in (("X1", (1, 0, 0, 0)), ("X2", (0, 1, 0, 0))):
        if g.exponent_vectors() <= {exps, (0, 0, 0, 0)} and g.depends_on(var):
            lead = g.coefficient(exps).as_scalar()
            const = g.coefficient((0, 0, 0, 0))
            if lead is None:
                return None
            p = (-const).scale(lead.inverse()).as_scalar()
            if p is None:
                return None
            return var, p
    return None


def _classify_point_fiber(spec: SurfaceSpec) -> ClassificationResult:
    coords: dict[str, ExactScalar] = {}
    extras = []
    for g in spec.generators:
        hit = _point_fiber_coordinate(g)
        if hit and hit[0] not in coords:
            coords[hit[0]] = hit[1]
        else:
            extras.append(g)
    if set(coords) != {"X1", "X2"}:
        return _unsupported("point_fiber needs generators X1 - p1 and X2 - p2")
    p1, p2 = coords["X1"], coords["X2"]
    exact_hat = []
    for p in (p1, p2):
        exact_hat.append(ExactScalar.symbol("E", int(p.re)) if p.is_integer() and p.re else
                         ExactScalar(1) if p.is_zero() else None)
    for g in extras:
        if None in exact_hat:
            return _unsupported("extra relation at a non-integer point cannot be decided exactly")
        R = PolyRing(("T",), ())
        images = [R.const(p1), R.const(p2), R.const(exact_hat[0]), R.const(exact_hat[1])]
        if not g.substitute(images).is_zero():
            return _unsupported("extra relation does not vanish on the fibre; not a surface")
    val = NumericValuation()
    z1, z2 = p1.evaluate(val), p2.evaluate(val)
    point = {"X1": _cplx(z1), "X2": _cplx(z2), "Xh1": _cplx(cmath.exp(z1)), "Xh2": _cplx(cmath.exp(z2))}
    exact = {"X1": p1.to_json(), "X2": p2.to_json()}
    for name, h in zip(("Xh1", "Xh2"), exact_hat):
        if h is not None:
            exact[name] = h.to_json()
    return _result("a", {"point": point, "exact_point": exact})


def _check_reduced_shape(F0: MultiPoly, F: MultiPoly) -> str | None:
    if not (F.depends_on("Xh1") or F.depends_on("Xh2")):
        return "F must involve Xh1 or Xh2"
    if F0.total_degree(("X1", "X2")) != 1:
        return None
    alpha = F0.coefficient((1, 0, 0, 0)).as_scalar()
    beta = F0.coefficient((0, 1, 0, 0)).as_scalar()
    gamma = F0.coefficient((0, 0, 0, 0))
    R = PolyRing(("Y", "Xh1", "Xh2"), ("Xh1", "Xh2"), polynomial=False)
    Y, Xh1, Xh2 = R.gens
    if alpha is None or beta is None:
        return None
    g = _const_in(gamma, R)
    if not alpha.is_zero():
        images = [-(R.const(beta) * Y + g).scale(alpha.inverse()), Y, Xh1, Xh2]
    else:
        images = [Y, -g.scale(beta.inverse()), Xh1, Xh2]
    reduced = F.substitute(images)
    hat_exps = {exps[1:] for exps in reduced.exponent_vectors()}
    if len(hat_exps) <= 1:
        return "F is a monomial in Xh times a polynomial on the line (excluded presentation)"
    return None


def _const_in(gamma: LaurentPoly, R: PolyRing) -> LaurentPoly:
    out = R.zero()
    for _, s in gamma.terms():
        out = out + R.const(s)
    return out


def _prune_numerically(G: LaurentPoly, valuation: NumericValuation, tol: float):
    """Drop monomial coefficients that vanish numerically; returns (G, flags)."""
    flags = []
    kept = G
    for exps in sorted(G.exponent_vectors()):
        coeff = G.coefficient(exps)
        if len(coeff) < 2:
            continue
        vals = [s.evaluate(valuation) for s in coeff.constant_terms()]
        scale = sum(abs(v) for v in vals)
        if abs(sum(vals)) <= tol * scale:
            mono = {(exps, syms): c for (e, syms), c in G._terms.items() if e == exps}
            kept = kept - kept._like(mono)
            flags.append(f"heuristic: coefficient {coeff!r} of Y^{exps[0]}*Yh^{exps[1]} "
                         f"treated as zero (|value| = {abs(sum(vals)):.3e})")
    return kept, flags


def classify_surface(spec: SurfaceSpec, numeric_valuation: NumericValuation | None = None,
                     numeric_tol: float = 1e-10) -> ClassificationResult:
    """Decide the case (a, b, c, d1, d2, d31, d32) of a surface.

    Constant-versus-zero decisions are exact under symbol independence.  A
    ``numeric_valuation`` opts into numerical overrides, each recorded in
    ``heuristic_flags``.
    """
    if spec.kind == "point_fiber":
        return _classify_point_fiber(spec)
    if spec.kind == "full_projection":
        for g in spec.generators:
            if g.depends_on("X1") or g.depends_on("X2"):
                return _unsupported("full_projection generators must involve Xh1, Xh2 only")
        return _result("b", {"projection": "pi(S) is all of C^2"})
    if len(spec.generators) != 2:
        return _unsupported("curve_pair needs exactly (F0, F)")
    F0, F = spec.F0, spec.F
    try:
        line = detect_rational_slope(F0)
        problem = _check_reduced_shape(F0, F)
    except UnsupportedSurface as exc:
        return _unsupported(str(exc))
    if problem:
        return _unsupported(problem)
    if line is None:
        return _result("c", {"reason": "pi(S) is not a line of rational slope",
                             "F0_degree": F0.total_degree(("X1", "X2"))})
    bs = back_substitute(F, line)
    G = bs.G
    flags: list[str] = []
    if numeric_valuation is not None and not G.is_zero():
        G, flags = _prune_numerically(G, line.valuation(numeric_valuation), numeric_tol)
        if flags:
            G, shift, content = normalize_backsub(G)
            bs = BackSubResult(line, G, bs.images, bs.F, bs.clearing_exponent + shift, content)
    witness = {"backsub": bs.to_json()}
    if G.is_zero():
        witness["parametrization"] = "Z = {(a1*c + m2*y, a2*c - m1*y, exp(.), exp(.)) : y in C}"
        return _result("d2", witness, flags)
    if G.is_constant():
        return _result("d1", witness, flags)
    if bs.h_of_Y() is not None:
        points, pflags = resolve_d31_points(bs, numeric_valuation)
        witness["points"] = [{"z1": _cplx(z1), "z2": _cplx(z2), "residual": r} for z1, z2, r in points]
        return _result("d31", witness, flags + pflags)
    return _result("d32", witness, flags)


# Univariate polynomials over Q(i): lists of (re, im) Fraction pairs, low degree first.

def _u_trim(p):
    while p and p[-1] == (0, 0):
        p = p[:-1]
    return p


def _u_divmod(a, b):
    from .exactpoly import _ginv, _gmul
    a = list(a)
    q = [(Fraction(0), Fraction(0))] * max(len(a) - len(b) + 1, 1)
    inv = _ginv(b[-1])
    while len(_u_trim(a)) >= len(b):
        a = _u_trim(a)
        k = len(a) - len(b)
        f = _gmul(a[-1], inv)
        q[k] = f
        for i, c in enumerate(b):
            t = _gmul(f, c)
            a[i + k] = (a[i + k][0] - t[0], a[i + k][1] - t[1])
        a = a[:-1]
    return q, _u_trim(a)


def _u_gcd(a, b):
    a, b = _u_trim(a), _u_trim(b)
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, r
    return a


def squarefree_part(coeffs: Sequence[tuple[Fraction, Fraction]]):
    """Squarefree part of a univariate polynomial over Q(i)."""
    p = _u_trim(list(coeffs))
    dp = [(c[0] * i, c[1] * i) for i, c in enumerate(p)][1:]
    g = _u_gcd(p, dp)
    if len(g) <= 1:
        return p
    q, r = _u_divmod(p, g)
    assert not r
    return _u_trim(q)


def resolve_d31_points(result: BackSubResult, valuation: NumericValuation | None = None,
                       residual_tol: float = 1e-9):
    """Points (z1, z2, residual) of Z when G = unit * h(Y).

    Returns ``(points, flags)``; flags are set when h has symbolic
    coefficients, since its roots are then only known numerically.
    """
    h = result.h_of_Y()
    if h is None:
        raise ValueError("G is not a unit times a polynomial in Y alone")
    if h.is_constant():
        raise ValueError("h is constant: no points, contradicting the d31 shape")
    line = result.line
    val = line.valuation(valuation)
    flags = []
    deg = h.degree("Y")
    if h.symbols():
        flags.append("heuristic: h(Y) has symbolic coefficients; roots use numeric symbol values")
        coeffs = [complex(h.coefficient((k, 0)).compile(val)(np.zeros((1, 2)))[0]) for k in range(deg + 1)]
    else:
        exact = [(Fraction(0), Fraction(0))] * (deg + 1)
        for exps, s in h.terms():
            exact[exps[0]] = (s.re, s.im)
        exact = squarefree_part(exact)
        coeffs = [complex(float(a), float(b)) for a, b in exact]
    roots = np.roots(coeffs[::-1]) if len(coeffs) > 1 else np.array([])
    hp = np.polynomial.Polynomial(coeffs)
    dhp = hp.deriv()
    polished = []
    for y in roots:
        for _ in range(50):
            d = dhp(y)
            if d == 0:
                break
            step = hp(y) / d
            y = y - step
            if abs(step) <= 1e-16 * max(1.0, abs(y)):
                break
        polished.append(complex(y))
    polished.sort(key=lambda y: (round(y.real, 12), round(y.imag, 12)))
    cval = line.c_value(val)
    Fc = result.F.compile(val)
    points = []
    for y in polished:
        z1 = line.a1 * cval + line.m2 * y
        z2 = line.a2 * cval - line.m1 * y
        res = float(abs(Fc(np.array([[z1, z2, cmath.exp(z1), cmath.exp(z2)]]))[0]))
        if res >= residual_tol:
            raise ArithmeticError(f"d31 point residual {res:.3e} exceeds {residual_tol}")
        points.append((complex(z1) + 0.0, complex(z2) + 0.0, res))
    return points, flags
