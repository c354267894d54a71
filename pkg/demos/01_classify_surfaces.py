"""
Which surfaces have zeros of exponential type
=============================================

Each canned surface is classified by the case of its projection.  The
exact arithmetic never evaluates the symbols E, C, CHAT numerically, so
the verdicts below are decisions, not estimates.
"""

from expzero import catalog
from expzero.classifier import SurfaceSpec, classify_surface, surface_ring
from expzero.exactpoly import NumericValuation

for name in catalog.SURFACES:
    res = classify_surface(catalog.surface(name))
    print(f"{name:16s} case {res.case_label:4s} {res.pi_Z_verdict}")

# the EX surface reduces to a single exponential-polynomial equation
ex = classify_surface(catalog.surface("EX"))
print("\nEX back-substitution G:", ex.witness["backsub"]["G"]["terms"].__len__(), "terms")

# d31: the finite set of points, with their residuals
for p in classify_surface(catalog.surface("d31_variant")).witness["points"]:
    print("d31 variant point", p["z1"], p["z2"], f"residual {p['residual']:.1e}")

# a numeric valuation can override an exact decision; the flag says so
R = surface_ring()
X1, X2, Xh1, Xh2 = R.gens
spec = SurfaceSpec.curve_pair(X1 + X2 - R.symbol("C"), Xh1 * Xh2 - R.symbol("E"))
print("\nexact:", classify_surface(spec).case_label)
res = classify_surface(spec, NumericValuation({"C": 1.0}))
print("with C = 1:", res.case_label, res.heuristic_flags)
