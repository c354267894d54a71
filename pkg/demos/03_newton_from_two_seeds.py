"""
Newton's method on e^z + e^(z^2) - 1
====================================

From -sqrt(100 pi)(1+i) Newton lands on a nearby zero at once.  From the
mirrored seed it wanders before settling, which is why every root comes
with a winding certificate rather than on Newton's word alone.
"""

from expzero import catalog
from expzero.analytic import Contour, count_zeros, isolate_zeros, newton_refine

phi = catalog.phi_b()
for label, seed in (("minus", catalog.PHI_B_SEED_GOOD), ("plus", catalog.PHI_B_SEED_CHAOS)):
    r = newton_refine(phi, seed)
    print(f"{label:5s} seed {seed:.4f} -> {r.z:.10f} after {r.iters} iterations, "
          f"moved {abs(r.z - seed):.3f}, residual {r.residual:.1e}")

print("zeros with |z| <= 30:", count_zeros(phi, Contour.circle(0, 30.0)))

# certify the zero next to the good seed
s = catalog.PHI_B_SEED_GOOD
for cert in isolate_zeros(phi, Contour.circle(s, 1.0)):
    print(cert.status, [f"{r.z:.10f}" for r in cert.roots])
