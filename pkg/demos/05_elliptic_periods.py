"""
Weierstrass functions and Baker-Akhiezer periods
================================================

For a lattice point omega, exp(omega zeta(z) - eta z) is doubly periodic.
The periods of its logarithmic derivative are 2 pi i times integers, and
those integers give omega back.
"""

import numpy as np

from expzero.elliptic import (baker_akhiezer_phi, elliptic_from_lattice, elliptic_verify, lattice_point_from_periods,
                              period_vector_of_log_derivative, wp, wp_prime)

data = elliptic_from_lattice(2.0, 2j)
print("g2 =", data.g2.real, " g3 =", abs(data.g3))
print("Legendre:", data.legendre)

report = elliptic_verify(2.0, 2j)
for key in ("ode_relative", "half_period_identity", "zeta_addition", "psi_log_derivative"):
    print(f"{key:24s} {report[key]:.1e}")

# recover 2 omega1 - omega2 from a function that only knows its periods
om = 2 * data.omega1 - data.omega2


def f(z):
    return baker_akhiezer_phi(data, om, z) * np.exp(0.1 * wp(data, z) + 0.05 * wp_prime(data, z))


p, q = period_vector_of_log_derivative(data, f)
print("period vector", (p, q), "-> lattice point", lattice_point_from_periods(data, p, q))
