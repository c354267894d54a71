"""Classification and zero finding for polynomial-exponential systems.

Modules: ``exactpoly`` (exact Laurent polynomials over Q(i) with symbols),
``classifier`` (surface cases a, b, c, d1, d2, d31, d32), ``analytic``
(argument principle, isolation, Laurent data), ``elliptic`` (Weierstrass
functions and Baker-Akhiezer factors) and ``cli``.
"""

from .exactpoly import ExactScalar, LaurentPoly, MultiPoly, NumericValuation, PolyRing
from .classifier import (BackSubResult, ClassificationResult, LineSpec, SurfaceSpec, back_substitute,
                         classify_surface, detect_rational_slope, resolve_d31_points)

__version__ = "0.1.0"
