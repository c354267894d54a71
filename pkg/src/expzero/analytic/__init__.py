"""Numeric engine for Phi(z) = F(xi(z), exp(xi(z)))."""

from .contours import Arc, Contour, ContourError, Segment
from .functions import (AnalyticFunction, CurveParametrization, ExcludedPointError, PhiFunction,
                        phi_eval, phi_from_json, phi_prime, phi_to_json)
from .winding import (AnalyticConfig, NonIntegerWinding, ZeroOnContour, argument_change, count_zeros,
                      count_zeros_in, winding_details, winding_number)
from .isolate import BudgetExceeded, NewtonResult, ZeroCertificate, isolate_zeros, newton_refine
from .circle import CircleZero, TraceNotReal, circle_trace, circle_trace_bisect
from .laurent import (BCReport, BranchTrackingError, LaurentProfile, ZerosInAnnulus, aest_bound,
                      borel_caratheodory_check, cauchy_bc_bounds, fourier_coefficients, laurent_profile)
