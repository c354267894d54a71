import cmath
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from expzero import catalog
from expzero.classifier import (ClassificationResult, LineSpec, SurfaceSpec, back_substitute, bezout_coefficients,
                                classify_surface, detect_rational_slope, surface_ring)
from expzero.exactpoly import ExactScalar, NumericValuation, PolyRing

EXPECTED = {
    "NZ": ("d1", "empty"),
    "EX": ("d32", "infinite_dense"),
    "d2": ("d2", "infinite_dense"),
    "d31": ("d31", "nonempty_finite"),
    "d31_variant": ("d31", "nonempty_finite"),
    "hyperbola": ("c", None),
    "point_fiber": ("a", None),
    "full_projection": ("b", None),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_catalog_cases(name):
    res = classify_surface(catalog.surface(name))
    case, verdict = EXPECTED[name]
    assert res.case_label == case
    if verdict:
        assert res.pi_Z_verdict == verdict
    assert res.heuristic_flags == []


def test_ex_backsub_normal_form():
    res = classify_surface(catalog.surface("EX"))
    R = PolyRing(("Y", "Yh"), ("Yh",), polynomial=False)
    Y, Yh = R.gens
    want = Yh**2 + R.symbol("E") - Y * Yh + Y**2 * Yh
    got = json.dumps(res.witness["backsub"]["G"], sort_keys=True, separators=(",", ":"))
    assert got == want.dumps()
    assert res.dumps() == classify_surface(catalog.surface("EX")).dumps()


def test_d31_point_is_on_both_curves():
    res = classify_surface(catalog.surface("d31"))
    (pt,) = res.witness["points"]
    z1, z2 = complex(*pt["z1"]), complex(*pt["z2"])
    assert abs(z1) < 1e-12 and abs(z2 - 1) < 1e-12
    # F = X1 - e + Xh1*Xh2 at (0, 1, 1, e)
    assert abs(z1 - math.e + cmath.exp(z1) * cmath.exp(z2)) < 1e-12


def test_d31_variant_two_points():
    res = classify_surface(catalog.surface("d31_variant"))
    pts = sorted((round(complex(*p["z1"]).real, 9), round(complex(*p["z2"]).real, 9)) for p in res.witness["points"])
    assert pts == [(0.0, 1.0), (1.0, 0.0)]


def test_point_fiber_witness():
    res = classify_surface(catalog.surface("point_fiber"))
    assert res.witness["point"]["X1"] == [0.0, 0.0]
    assert res.witness["point"]["Xh1"] == [1.0, 0.0]


def test_fermat_projects_to_a_curve():
    res = classify_surface(catalog.surface("fermat"))
    assert res.case_label == "c" and res.witness["F0_degree"] == 9


def test_monomial_presentation_is_unsupported():
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    res = classify_surface(SurfaceSpec.curve_pair(X1 + X2 - 1, Xh1 * Xh2 * (X1 - 2)))
    assert res.case_label == "unsupported" and res.pi_Z_verdict == "unknown"
    res = classify_surface(SurfaceSpec.curve_pair(X1 + X2 - 1, X1 - X2))
    assert res.case_label == "unsupported"


def test_full_projection_rejects_x_generators():
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    assert classify_surface(SurfaceSpec("full_projection", (X1, Xh2 - 1))).case_label == "unsupported"


def test_verdict_must_match_case():
    with pytest.raises(ValueError):
        ClassificationResult("d1", "whole_line")


def test_nz_needs_no_valuation():
    # NZ is decided exactly: the symbol E is never evaluated
    res = classify_surface(catalog.surface("NZ"), NumericValuation({"E": float("nan")}))
    assert res.case_label == "d1" and not res.heuristic_flags


def test_heuristic_override_is_flagged():
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    spec = SurfaceSpec.curve_pair(X1 + X2 - R.symbol("C"), Xh1 * Xh2 - R.symbol("E"))
    assert classify_surface(spec).case_label == "d1"
    res = classify_surface(spec, NumericValuation({"C": 1.0}))
    assert res.case_label == "d2"
    assert res.heuristic_flags and res.heuristic_flags[0].startswith("heuristic:")


def test_bezout_tie_break():
    assert bezout_coefficients(1, 1) == (0, 1)
    assert bezout_coefficients(2, 3) == (-1, 1)
    assert bezout_coefficients(1, 0) == (1, 0)
    with pytest.raises(ValueError):
        bezout_coefficients(2, 4)


def test_line_spec_validation():
    with pytest.raises(ValueError):
        LineSpec(2, 4, ExactScalar(1), 1, 0, ExactScalar.symbol("E"))
    with pytest.raises(ValueError):
        LineSpec(1, 1, ExactScalar(1), 1, 1, ExactScalar.symbol("E"))


def test_surface_json_roundtrip():
    for name in EXPECTED:
        spec = catalog.surface(name)
        back = SurfaceSpec.from_json(json.dumps(spec.to_json()))
        assert classify_surface(back).dumps() == classify_surface(spec).dumps()


# properties -------------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_d2_line_lies_in_surface(yr, yi):
    res = classify_surface(catalog.surface("d2"))
    assert res.case_label == "d2"
    line = res.witness["backsub"]["line"]
    y = complex(yr, yi)
    z1 = line["a1"] * 1 + line["m2"] * y
    z2 = line["a2"] * 1 - line["m1"] * y
    assert abs(z1 + z2 - 1) < 1e-12
    assert abs(cmath.exp(z1) * cmath.exp(z2) - math.e) < 1e-9 * math.e


small = st.integers(-3, 3)
term = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), small)


def _poly(terms):
    R = surface_ring()
    gens = R.gens
    p = R.zero()
    for *e, c in terms:
        mono = R.const(c)
        for g, k in zip(gens, e):
            mono = mono * g**k
        p = p + mono
    return p


@settings(max_examples=40, deadline=None)
@given(st.lists(term, min_size=1, max_size=4), st.integers(-3, 3), st.integers(1, 3),
       st.floats(-1, 1), st.floats(-1, 1))
def test_backsub_matches_pointwise_substitution(terms, m1, m2, yr, yi):
    assume(math.gcd(m1, m2) == 1)
    F = _poly(terms)
    a1, a2 = bezout_coefficients(m1, m2)
    line = LineSpec(m1, m2, ExactScalar(1), a1, a2, ExactScalar.symbol("E"))
    bs = back_substitute(F, line)
    y = complex(yr, yi)
    yh = cmath.exp(y)
    z1, z2 = a1 + m2 * y, a2 - m1 * y
    direct = F.evaluate([z1, z2, cmath.exp(z1), cmath.exp(z2)])
    via = bs.G.evaluate([y, yh]) * bs.content.evaluate() / yh**bs.clearing_exponent
    assert abs(direct - via) <= 1e-9 * max(1.0, abs(direct))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["NZ", "EX", "d2", "d31", "d31_variant", "hyperbola"]),
       st.fractions(Fraction(-5), Fraction(5)).filter(lambda q: q != 0))
def test_case_invariant_under_scaling_and_swap(name, q):
    spec = catalog.surface(name)
    base = classify_surface(spec).case_label
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    scaled = SurfaceSpec.curve_pair(spec.F0 * q, spec.F * q)
    assert classify_surface(scaled).case_label == base
    swap = (X2, X1, Xh2, Xh1)
    swapped = SurfaceSpec.curve_pair(spec.F0.substitute(swap), spec.F.substitute(swap))
    assert classify_surface(swapped).case_label == base


def test_detect_rational_slope_examples():
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    line = detect_rational_slope(2 * X1 + 3 * X2 - 1)
    assert (line.m1, line.m2) == (2, 3) or (line.m1, line.m2) == (-2, -3)
    assert detect_rational_slope(X1 + ExactScalar(0, 1) * X2 - 1) is None  # slope i is not real
    assert detect_rational_slope(X1 * X2 - 1) is None


def test_random_lines_never_crash():
    rng = np.random.default_rng(3)
    R = surface_ring()
    X1, X2, Xh1, Xh2 = R.gens
    for _ in range(30):
        m1, m2 = int(rng.integers(-4, 5)), int(rng.integers(1, 5))
        if math.gcd(m1, m2) != 1:
            continue
        F = Xh1 ** int(rng.integers(0, 3)) + Xh2 * int(rng.integers(-2, 3)) + X1
        res = classify_surface(SurfaceSpec.curve_pair(X1 * m1 + X2 * m2 - 1, F))
        assert res.case_label in ("d1", "d2", "d31", "d32", "unsupported")
