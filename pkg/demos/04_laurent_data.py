"""
Laurent data of log(e^z - z)
============================

On a zero-free circle log Phi has a Laurent series, read off by the FFT
of branch-tracked samples.  The Taylor coefficient a_2 = 1/2 cannot stay
below the growth bound 8 log(e^R + R) / R^2 once R = 17.
"""

import numpy as np

from expzero import catalog
from expzero.analytic import borel_caratheodory_check, fourier_coefficients, laurent_profile
from expzero.analytic.laurent import aest_bound

prof = laurent_profile(catalog.exp_minus_z(), 0, 0.5, 6)
print("winding m =", prof.m)
for k in range(1, 7):
    print(f"a_{k} = {prof.a(k).real:+.12f}")
print("bound at R = 17:", aest_bound(17.0), "< 1/2")

# z^2 e^(1/z): the log series is 2 log z + 1/z, the raw series has 1/k!
prof = laurent_profile(catalog.z2_exp_inv(), 0, 1.0, 4)
print("\nm =", prof.m, " a_-1 =", prof.a(-1))
raw = fourier_coefficients(catalog.z2_exp_inv(), 0, 1.0, 4, m=2)
print("raw coefficients of z^-k:", [round(raw[-k].real, 12) for k in range(5)])

rep = borel_caratheodory_check(lambda w: np.log(np.exp(w) - w), 0.25, 0.5)
print(f"\nBorel-Caratheodory: {rep.lhs:.4f} <= {rep.rhs:.4f}")
