"""
Zeros of e^z + e^(1/z) - 1
==========================

On |z| = 1 the function is real, so sign changes of the trace bracket
zeros.  Windings and certified isolation then account for the rest.
"""

import math

from expzero import catalog
from expzero.analytic import Contour, circle_trace_bisect, count_zeros_in, isolate_zeros, phi_eval, winding_number

phi = catalog.phi_a()

# real values of opposite sign at z = 1 and z = -1
print("phi(1)  =", phi_eval(phi, 1.0).real, " 2e - 1   =", 2 * math.e - 1)
print("phi(-1) =", phi_eval(phi, -1.0).real, " 2/e - 1 =", 2 / math.e - 1)

for z in circle_trace_bisect(phi, 1.0):
    print(f"on the circle: {z.real:.16f} {z.imag:+.16f}i  residual {z.residual:.1e}")

# the essential singularity at 0 is excluded, so counts use annuli
print("winding |z|=2:", winding_number(phi, Contour.circle(0, 2.0)))
print("winding |z|=1/2:", winding_number(phi, Contour.circle(0, 0.5)))
print("zeros in 1/2 < |z| < 2:", count_zeros_in(phi, Contour.annulus(0, 0.5, 2.0))[0])

for cert in isolate_zeros(phi, Contour.annulus(0, 7.0, 8.0)):
    for r in cert.roots:
        print(f"far zero {r.z:.12f}  |z| = {abs(r.z):.4f}  residual {r.residual:.1e}")
