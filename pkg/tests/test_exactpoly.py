import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from expzero.exactpoly import (ExactScalar, LaurentPoly, MultiPoly, NonUnitImage, NumericValuation, PolyRing,
                               VariableMismatch)

VARS = ("X1", "X2", "Xh1", "Xh2")
UNITS = ("Xh1", "Xh2")


def ring(polynomial=False):
    return PolyRing(VARS, UNITS, polynomial=polynomial)


# random Laurent polynomials: small Gaussian-rational coefficients, optional symbols
coeff = st.builds(lambda a, b, c, d: (Fraction(a, b), Fraction(c, d)),
                  st.integers(-5, 5), st.integers(1, 4), st.integers(-5, 5), st.integers(1, 4))
syms = st.sampled_from([(), (("E", 1),), (("C", -1),), (("E", 2), ("CHAT", 1))])
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2), st.integers(-2, 2))
laurent = st.lists(st.tuples(exps, syms, coeff), max_size=5).map(
    lambda ts: LaurentPoly(VARS, [((e, dict(s)), c) for e, s, c in ts], UNITS))


def test_difference_of_squares():
    X1, X2, _, _ = ring(True).gens
    assert (X1 + X2) * (X1 - X2) == X1**2 - X2**2


def test_add_zero_is_identity():
    X1, X2, Xh1, _ = ring().gens
    p = X1 * Xh1 - 3 * X2 + 1
    assert p + p.zero() == p


def test_laurent_monomial_shift():
    _, _, Xh1, Xh2 = ring().gens
    assert (Xh1 * Xh2 - 1) * Xh1 ** -1 == Xh2 - Xh1 ** -1


def test_mismatched_variables_raise():
    a = PolyRing(("X1", "X2")).gen("X1")
    b = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False).gen("Y")
    with pytest.raises(VariableMismatch):
        a + b


def test_negative_exponent_only_on_units():
    with pytest.raises(ValueError):
        LaurentPoly(VARS, [(((-1, 0, 0, 0), {}), (Fraction(1), Fraction(0)))], UNITS)
    with pytest.raises(ValueError):
        MultiPoly(VARS, [(((0, 0, -1, 0), {}), (Fraction(1), Fraction(0)))], UNITS)


def test_exponent_bound():
    X1 = ring().gen("X1")
    with pytest.raises(ValueError):
        X1 ** (2**31)


def test_scalar_normal_form():
    s = ExactScalar(Fraction(2, -4), 0, {"E": 0, "C": 2})
    assert s.re == Fraction(-1, 2) and s.re.denominator > 0
    assert dict(s.sym_powers) == {"C": 2}
    assert s == ExactScalar(Fraction(-1, 2), 0, {"C": 2})
    assert s != ExactScalar(Fraction(-1, 2), 0, {"C": 1})


def test_eval_on_the_line():
    X1, X2, _, _ = ring(True).gens
    F0 = X1 + X2 - 1
    assert F0.evaluate([0, 1, 1, 1]) == 0


def test_eval_exx_form():
    R = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False)
    Y, Yh = R.gens
    G = Yh**2 + R.symbol("E") - Y * Yh * (1 - Y)
    assert abs(G.evaluate([0, 1]) - (1 + math.e)) < 1e-15


def test_eval_exponent_sum():
    _, _, Xh1, Xh2 = ring().gens
    z = 0.3
    v = (Xh1 * Xh2).evaluate([0, 0, cmath.exp(z), cmath.exp(1 - z)])
    assert abs(v - math.e) < 1e-14


def test_eval_rejects_zero_unit():
    _, _, Xh1, _ = ring().gens
    with pytest.raises(ZeroDivisionError):
        Xh1.evaluate([1, 1, 0, 1])


def test_valuation_consistency():
    NumericValuation({"C": 1.0, "CHAT": math.e})
    with pytest.raises(ValueError):
        NumericValuation({"C": 1.0, "CHAT": 2.0})
    with pytest.raises(KeyError):
        ring().symbol("THETA").evaluate([1, 1, 1, 1])


def _kp_images(m1=1, m2=1, a1=0, a2=1, c=1, chat=None):
    R = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False)
    Y, Yh = R.gens
    chat = R.symbol("E") if chat is None else chat
    cc = R.const(c)
    return (cc * a1 + Y * m2, cc * a2 - Y * m1, chat**a1 * Yh**m2, chat**a2 * Yh ** (-m1)), R


def test_substitute_ex_gives_exx_before_clearing():
    X1, X2, Xh1, Xh2 = ring(True).gens
    images, R = _kp_images()
    Y, Yh = R.gens
    got = (X1 * X2 - Xh1 - Xh2).substitute(images)
    assert got == Y * (1 - Y) - Yh - R.symbol("E") * Yh ** -1


def test_substitute_identity():
    X1, X2, Xh1, Xh2 = ring(True).gens
    p = X1**2 * Xh2 - 3 * X2 + Xh1
    R = ring()
    assert p.substitute(R.gens) == p


def test_substitute_unit_product_is_constant():
    _, _, Xh1, Xh2 = ring(True).gens
    R = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False)
    images, _ = _kp_images(chat=R.symbol("CHAT"))
    got = (Xh1 * Xh2).substitute(images)
    assert got == R.symbol("CHAT")


def test_substitute_rejects_non_unit_image():
    X1, X2, Xh1, Xh2 = ring(True).gens
    images, R = _kp_images()
    Y, _ = R.gens
    bad = (images[0], images[1], Y + 1, images[3])
    with pytest.raises(NonUnitImage):
        (Xh1 + X1).substitute(bad)


def test_diff_examples():
    R = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False)
    Y, Yh = R.gens
    assert (Y**2 * Yh).diff("Y") == 2 * Y * Yh
    assert (Yh ** -1).diff("Yh") == -(Yh ** -2)
    assert (Yh**3 + R.symbol("E")).diff("Y").is_zero()
    with pytest.raises(VariableMismatch):
        Y.diff("Z")


def test_json_roundtrip_and_format():
    X1, X2, Xh1, Xh2 = ring(True).gens
    p = X1 * X2 - Xh1 - Xh2 + ring(True).symbol("E") * Fraction(1, 3)
    data = p.to_json()
    assert data["vars"] == list(VARS) and data["unit_vars"] == list(UNITS)
    assert all(set(t) == {"exps", "re", "im", "syms"} for t in data["terms"])
    assert all("/" in t["re"] and "/" in t["im"] for t in data["terms"])
    back = LaurentPoly.from_json(p.dumps())
    assert back == p and isinstance(back, MultiPoly)
    assert back.dumps() == p.dumps()


# properties -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p and p * q == q * p
    assert p - p == p.zero()


@settings(max_examples=60, deadline=None)
@given(laurent, laurent)
def test_product_rule(p, q):
    for v in VARS:
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, st.integers(0, 2**32 - 1))
def test_eval_is_multiplicative(p, q, seed):
    rng = np.random.default_rng(seed)
    pt = list(rng.uniform(0.5, 1.5, 4) * np.exp(1j * rng.uniform(0, 2 * np.pi, 4)))
    val = NumericValuation({"C": 0.7, "CHAT": cmath.exp(0.7)})
    lhs = (p * q).evaluate(pt, val)
    rhs = p.evaluate(pt, val) * q.evaluate(pt, val)
    scale = max(1.0, abs(rhs))
    assert abs(lhs - rhs) <= 1e-10 * scale


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(exps, syms, coeff), max_size=6), st.randoms())
def test_normal_form_is_canonical(terms, rnd):
    def build(ts):
        R = ring()
        out = R.zero()
        for e, s, (re, im) in ts:
            mono = R.const(ExactScalar(re, im, dict(s)))
            for g, k in zip(R.gens, e):
                mono = mono * g**k
            out = out + mono
        return out

    shuffled = list(terms)
    rnd.shuffle(shuffled)
    assert build(terms) == build(shuffled)
    assert build(terms).dumps() == build(shuffled).dumps()


def test_products_match_sympy():
    # independent oracle for the arithmetic on symbol-free polynomials
    rng = np.random.default_rng(7)
    x1, x2, y1, y2 = sympy.symbols("x1 x2 y1 y2")
    R = ring()
    gens = R.gens
    for _ in range(20):
        polys, sym_polys = [], []
        for _ in range(2):
            p, sp = R.zero(), 0
            for _ in range(4):
                e = (int(rng.integers(0, 3)), int(rng.integers(0, 3)), int(rng.integers(-2, 3)), int(rng.integers(-2, 3)))
                c = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
                term = R.const(c)
                for g, k in zip(gens, e):
                    term = term * g**k
                p = p + term
                sp += sympy.Rational(c.numerator, c.denominator) * x1**e[0] * x2**e[1] * y1**e[2] * y2**e[3]
            polys.append(p)
            sym_polys.append(sp)
        prod = polys[0] * polys[1]
        oracle = sympy.expand(sym_polys[0] * sym_polys[1])
        pt = (sympy.Rational(3, 7), sympy.Rational(-2, 5), sympy.Rational(5, 3), sympy.Rational(-4, 9))
        want = complex(oracle.subs(dict(zip((x1, x2, y1, y2), pt))))
        got = prod.evaluate([float(v) for v in pt])
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))
