"""Reproduction checks for the worked computations, one function per criterion.

Each check returns a CheckResult; none of them raises.  ``tol`` overrides
the criterion's stated tolerance (an absurdly small value forces failure).
Timing is recorded on the result but kept out of the JSON so that reports
are byte-identical across runs.
"""

from __future__ import annotations

import json
import math
import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .analytic import (AnalyticConfig, Contour, ZeroOnContour, circle_trace_bisect, count_zeros_in, isolate_zeros,
                       laurent_profile, newton_refine, phi_eval, winding_number)
from .analytic.functions import AnalyticFunction
from .analytic.laurent import aest_bound
from .classifier import backsub_ring, classify_surface
from .elliptic import (baker_akhiezer_phi, baker_akhiezer_psi, elliptic_from_lattice, period_vector_of_log_derivative,
                       sigma_w, wp)

__all__ = ["CheckResult", "CHECKS", "run_checks", "UNIT_CIRCLE_ZERO", "FAR_PAIR"]

UNIT_CIRCLE_ZERO = catalog.UNIT_CIRCLE_ZERO
FAR_PAIR = (7.0, 8.0)
M_CEILING = 62


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def unit_circle_zeros(tol: float = 1e-9) -> CheckResult:
    zs = circle_trace_bisect(catalog.phi_a(), 1.0, assume_real=True)
    targets = [UNIT_CIRCLE_ZERO, UNIT_CIRCLE_ZERO.conjugate()]
    errs = [min(abs(z - t) for z in zs) if zs else math.inf for t in targets]
    ok = len(zs) == 2 and max(errs) <= tol
    return CheckResult("unit_circle_zeros", ok, {"zeros": [_c(z) for z in zs], "errors": errs, "tol": tol})


def sign_change(tol: float = 1e-12) -> CheckResult:
    phi = catalog.phi_a()
    v1, vm1 = phi_eval(phi, 1.0), phi_eval(phi, -1.0)
    e1, em1 = 2 * math.e - 1, 2 / math.e - 1
    r1, rm1 = abs(v1 - e1) / abs(e1), abs(vm1 - em1) / abs(em1)
    ok = r1 <= tol and rm1 <= tol and v1.real > 0 > vm1.real
    return CheckResult("sign_change", ok, {"phi(1)": _c(v1), "phi(-1)": _c(vm1), "rel_errors": [r1, rm1], "tol": tol})


def far_pair(tol: float = 1e-9) -> CheckResult:
    cfg = AnalyticConfig(residual_tol=tol)
    certs = isolate_zeros(catalog.phi_a(), Contour.annulus(0, *FAR_PAIR), cfg=cfg)
    iso = [c for c in certs if c.status == "isolated"]
    roots = [r for c in iso for r in c.roots]
    ok = len(iso) >= 2 and all(r.residual < tol for r in roots)
    return CheckResult("far_pair", ok, {"certificates": [c.to_json() for c in certs], "tol": tol})


def winding(tol: float = 1e-6) -> CheckResult:
    cfg = AnalyticConfig(integer_tol=tol)
    phi = catalog.phi_a()
    w2 = winding_number(phi, Contour.circle(0, 2.0), cfg)
    w05 = winding_number(phi, Contour.circle(0, 0.5), cfg)
    try:
        winding_number(phi, Contour.circle(0, 1.0), cfg)
        zero_on_unit = False
    except ZeroOnContour:
        zero_on_unit = True
    count, used = count_zeros_in(phi, Contour.annulus(0, 0.5, 2.0), cfg)
    ok = w2 == 1 and zero_on_unit and w2 - w05 == count == 2 and abs(w2) <= M_CEILING
    return CheckResult("winding", ok, {"winding_r2": w2, "winding_r0.5": w05, "unit_circle_zero_on_contour": zero_on_unit,
                                       "annulus_count": count, "annulus_used": used.to_json(),
                                       "m_ceiling": M_CEILING, "tol": tol})


CLASSIFIER_TABLE = (("point_fiber", "a"), ("full_projection", "b"), ("hyperbola", "c"),
                    ("NZ", "d1"), ("d2", "d2"), ("d31", "d31"))


def classifier_table(tol: float = 1e-12) -> CheckResult:
    rows, ok = {}, True
    for name, want in CLASSIFIER_TABLE:
        res = classify_surface(catalog.surface(name))
        rows[name] = {"case": res.case_label, "expected": want, "flags": list(res.heuristic_flags)}
        ok &= res.case_label == want and not res.heuristic_flags
    d31 = classify_surface(catalog.surface("d31")).witness.get("points", [])
    pts = [(complex(*p["z1"]), complex(*p["z2"]), p["residual"]) for p in d31]
    ok &= len(pts) == 1 and abs(pts[0][0]) <= tol and abs(pts[0][1] - 1) <= tol and pts[0][2] < tol
    if pts:
        z1, z2 = pts[0][0], pts[0][1]
        rows["d31"]["point"] = _c(z1) + _c(z2) + _c(np.exp(z1)) + _c(np.exp(z2))
    var = classify_surface(catalog.surface("d31_variant"))
    vpts = sorted((round(complex(*p["z1"]).real, 9), round(complex(*p["z2"]).real, 9))
                  for p in var.witness.get("points", []))
    ok &= var.case_label == "d31" and vpts == [(0.0, 1.0), (1.0, 0.0)] and not var.heuristic_flags
    rows["d31_variant"] = {"case": var.case_label, "points": vpts}
    return CheckResult("classifier_table", ok, {"rows": rows, "tol": tol})


def expected_exx():
    R = backsub_ring()
    Y, Yh = R.gens
    return Yh**2 + R.symbol("E") - Y * Yh * (1 - Y)


def backsub_regression(tol: float = 0.0) -> CheckResult:
    first = classify_surface(catalog.surface("EX"))
    second = classify_surface(catalog.surface("EX"))
    G = first.witness["backsub"]["G"]
    got = json.dumps(G, sort_keys=True, separators=(",", ":"))
    want = expected_exx().dumps()
    ok = first.case_label == "d32" and got == want and first.dumps() == second.dumps()
    return CheckResult("backsub_regression", ok, {"G": G, "matches_normal_form": got == want,
                                                  "byte_identical": first.dumps() == second.dumps()})


def laurent_taylor(tol: float = 1e-8) -> CheckResult:
    prof = laurent_profile(catalog.exp_minus_z(), 0, 0.5, 6)
    a1, a2 = prof.a(1), prof.a(2)
    bound17 = aest_bound(17.0)
    ok = prof.m == 0 and abs(a1) <= tol and abs(a2 - 0.5) <= tol and bound17 < 0.5
    return CheckResult("laurent_taylor", ok, {"m": prof.m, "a1": _c(a1), "a2": _c(a2), "aest_R17": bound17, "tol": tol})


def oracle_equivalence(tol: float = 1e-6, trials: int = 100, seed: int = 0x5EED) -> CheckResult:
    rng = np.random.default_rng(seed)
    cfg = AnalyticConfig(integer_tol=tol, sampling=256)
    mismatches = []
    for i in range(trials):
        deg = int(rng.integers(1, 9))
        roots = rng.uniform(-2, 2, deg) + 1j * rng.uniform(-2, 2, deg)
        f = AnalyticFunction.polynomial(roots)
        x = np.sort(rng.uniform(-2.5, 2.5, 2))
        y = np.sort(rng.uniform(-2.5, 2.5, 2))
        if x[1] - x[0] < 0.05 or y[1] - y[0] < 0.05:
            x[1] += 0.1
            y[1] += 0.1
        n, used = count_zeros_in(f, Contour.rectangle(x[0], y[0], x[1], y[1], 256), cfg)
        planted = sum(used.contains(r) for r in roots)
        if n != planted:
            mismatches.append({"trial": i, "count": n, "planted": int(planted)})
    return CheckResult("oracle_equivalence", not mismatches, {"trials": trials, "mismatches": mismatches})


def elliptic_identities(tol: float = 1e-8, omega1: complex = 2.0, omega2: complex = 2j,
                        n_points: int = 20, seed: int = 0x5EED) -> CheckResult:
    data = elliptic_from_lattice(omega1, omega2)
    rng = np.random.default_rng(seed)
    zs = (rng.uniform(0.1, 0.9, n_points) * data.omega1 + rng.uniform(0.1, 0.9, n_points) * data.omega2)
    legendre = min(abs(data.legendre - 2j * math.pi), abs(data.legendre + 2j * math.pi))
    period = max(float(np.max(np.abs(baker_akhiezer_phi(data, data.omega1, zs + w) / baker_akhiezer_phi(data, data.omega1, zs) - 1)))
                 for w in (data.omega1, data.omega2))
    half = data.omega1 / 2
    lhs = wp(data, zs) - wp(data, half)
    rhs = baker_akhiezer_psi(data, half, zs) ** 2 / (sigma_w(data, half) ** 2 * baker_akhiezer_phi(data, data.omega1, zs))
    half_err = float(np.max(np.abs(rhs - lhs) / np.abs(lhs)))
    v1 = period_vector_of_log_derivative(data, lambda z: baker_akhiezer_phi(data, data.omega1, z))
    v2 = period_vector_of_log_derivative(data, lambda z: baker_akhiezer_phi(data, data.omega2, z))
    patterns = v1[0] == 0 and abs(v1[1]) == 1 and abs(v2[0]) == 1 and v2[1] == 0
    ok = legendre <= tol and period <= tol and half_err <= tol and patterns
    return CheckResult("elliptic_identities", ok, {"legendre_residual": legendre, "phi_periodicity": period,
                                                   "half_period_identity": half_err,
                                                   "period_vector_omega1": list(v1), "period_vector_omega2": list(v2),
                                                   "tol": tol})


def newton_chaos(tol: float = 1e-9) -> CheckResult:
    cfg = AnalyticConfig(residual_tol=tol)
    phi = catalog.phi_b()
    runs = {}
    for name, seed in (("minus_seed", catalog.PHI_B_SEED_GOOD), ("plus_seed", catalog.PHI_B_SEED_CHAOS)):
        r = newton_refine(phi, seed, cfg)
        good = r.converged and r.residual < tol
        runs[name] = {"seed": _c(seed), "root": _c(r.z), "iters": r.iters, "residual": r.residual,
                      "status": "isolated" if good else "cluster", "reason": r.reason,
                      "distance_from_seed": abs(r.z - seed)}
    ok = runs["minus_seed"]["status"] == "isolated" and runs["plus_seed"]["status"] in ("isolated", "cluster")
    return CheckResult("newton_chaos", ok, {"runs": runs, "tol": tol})


CHECKS = {
    "unit_circle_zeros": unit_circle_zeros,
    "sign_change": sign_change,
    "far_pair": far_pair,
    "winding": winding,
    "classifier_table": classifier_table,
    "backsub_regression": backsub_regression,
    "laurent_taylor": laurent_taylor,
    "oracle_equivalence": oracle_equivalence,
    "elliptic_identities": elliptic_identities,
    "newton_chaos": newton_chaos,
}


def run_check(name: str, tol: float | None = None) -> CheckResult:
    fn = CHECKS[name]
    t0 = time.perf_counter()
    try:
        res = fn() if tol is None else fn(tol=tol)
    except Exception as exc:  # a crash is a failed criterion, not a crashed report
        res = CheckResult(name, False, {"error": f"{type(exc).__name__}: {exc}",
                                        "trace": traceback.format_exc(limit=3).splitlines()[-1]})
    res.seconds = time.perf_counter() - t0
    return res


def run_checks(only: list[str] | None = None, tol: float | None = None) -> list[CheckResult]:
    names = only or list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    return [run_check(n, tol) for n in names]
