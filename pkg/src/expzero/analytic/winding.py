"""Winding numbers and zero counts by the argument principle.

Two routes are computed on every loop and must agree:

* continuous argument tracking on an adaptively refined parameter grid, where
  every interval whose phase step reaches pi/2 is bisected;
* Gauss-Legendre quadrature of Phi'/Phi over the same intervals, whose raw
  value must lie within ``integer_tol`` of the tracked integer.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .contours import Contour, ContourError

__all__ = [
    "AnalyticConfig",
    "ZeroOnContour",
    "NonIntegerWinding",
    "WindingResult",
    "winding_number",
    "winding_details",
    "argument_change",
    "count_zeros",
    "count_zeros_in",
]

TWO_PI = 2.0 * math.pi
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_GL_NODES = (_GL_NODES + 1.0) / 2.0
_GL_WEIGHTS = _GL_WEIGHTS / 2.0


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("EXPZERO_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class AnalyticConfig:
    """Tolerances and limits shared by the analytic routines."""

    sampling: int = 1024
    clearance: float = 1e-6
    zero_on_contour_tol: float = 1e-8
    integer_tol: float = 1e-6
    residual_tol: float = 1e-9
    newton_tol: float = 1e-12
    newton_maxiter: int = 100
    divergence_radius: float = 1e6
    cell_cap: int = 4096
    min_cell_size: float = 1e-9
    jitter_retries: int = 8
    seed: int = 0x5EED
    max_points: int = 1 << 20
    threads: int = 0

    def __post_init__(self):
        for name in ("clearance", "zero_on_contour_tol", "integer_tol", "residual_tol", "newton_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.threads <= 0:
            object.__setattr__(self, "threads", _default_threads())


class ZeroOnContour(ContourError):
    def __init__(self, message: str, location: complex | None = None):
        super().__init__(message)
        self.location = location


class NonIntegerWinding(ContourError):
    pass


@dataclass(frozen=True)
class WindingResult:
    winding: int
    raw: float
    points: int
    min_abs: float


def _piece_eval(phi, piece, t):
    z = piece.point(t)
    mant, dmant, M = phi.scaled(z)
    return z, mant, dmant, M


def _track_piece(phi, piece, n0: int, cfg: AnalyticConfig):
    """Refine a parameter grid on one piece until phase steps are < pi/2.

    Returns (t grid, mantissas, min |Phi|).  Raises ZeroOnContour when a
    sample falls below the tolerance.
    """
    t = np.linspace(0.0, 1.0, n0 + 1)
    z, mant, _, M = _piece_eval(phi, piece, t)
    log_tol = math.log(cfg.zero_on_contour_tol)
    total = len(t)
    while True:
        with np.errstate(divide="ignore"):
            logabs = np.log(np.abs(mant)) + M
        k = int(np.argmin(logabs))
        if logabs[k] < log_tol:
            raise ZeroOnContour(f"|Phi| = {math.exp(max(logabs[k], -700)):.3e} on the contour at {z[k]:.12g}",
                                complex(z[k]))
        steps = np.angle(mant[1:] / mant[:-1])
        bad = np.nonzero(np.abs(steps) >= math.pi / 2)[0]
        if bad.size == 0:
            return t, mant, float(math.exp(min(max(logabs.min(), -700), 700)))
        width = t[bad + 1] - t[bad]
        if total + bad.size > cfg.max_points or np.min(width) < 1e-15:
            raise NonIntegerWinding("adaptive sampling limit reached without resolving the phase")
        tm = (t[bad] + t[bad + 1]) / 2
        zm, mm, _, Mm = _piece_eval(phi, piece, tm)
        t = np.insert(t, bad + 1, tm)
        z = np.insert(z, bad + 1, zm)
        # bring the new mantissas to the scale of their left neighbours
        M_left = M[bad]
        mm = mm * np.exp(Mm - M_left)
        mant = np.insert(mant, bad + 1, mm)
        M = np.insert(M, bad + 1, M_left)
        total += bad.size


def _quadrature(phi, piece, t) -> complex:
    a, b = t[:-1], t[1:]
    h = (b - a)[:, None]
    nodes = a[:, None] + h * _GL_NODES[None, :]
    z = piece.point(nodes)
    mant, dmant, _ = phi.scaled(z)
    integrand = dmant / mant * piece.deriv(nodes)
    return complex(np.sum(integrand * _GL_WEIGHTS[None, :] * h))


def _phase_total(mant) -> float:
    return float(np.sum(np.angle(mant[1:] / mant[:-1])))


def argument_change(phi, piece, cfg: AnalyticConfig | None = None, n0: int | None = None) -> complex:
    """(1/2 pi i) * integral of Phi'/Phi along one open piece."""
    cfg = cfg or AnalyticConfig()
    t, mant, _ = _track_piece(phi, piece, n0 or cfg.sampling, cfg)
    return _quadrature(phi, piece, t) / (2j * math.pi)


def _loop_winding(phi, pieces, cfg: AnalyticConfig, sampling: int) -> WindingResult:
    total_len = sum(p.length for p in pieces) or 1.0
    per_piece = [max(16, int(math.ceil(sampling * p.length / total_len))) for p in pieces]
    for attempt in range(4):
        phase = 0.0
        quad = 0j
        npts = 0
        min_abs = math.inf
        ends = []
        for piece, n0 in zip(pieces, per_piece):
            t, mant, mabs = _track_piece(phi, piece, n0 << attempt, cfg)
            phase += _phase_total(mant)
            quad += _quadrature(phi, piece, t)
            npts += len(t) * (1 + len(_GL_NODES))
            min_abs = min(min_abs, mabs)
            ends.append((mant[0], mant[-1]))
        # phase jumps across piece junctions (same point, possibly different scales)
        for (_, last), (first, _) in zip(ends, ends[1:] + ends[:1]):
            phase += float(np.angle(first / last))
        n_arg = round(phase / TWO_PI)
        raw = (quad / (2j * math.pi))
        if abs(raw.real - n_arg) <= cfg.integer_tol and abs(raw.imag) <= cfg.integer_tol \
                and abs(phase / TWO_PI - n_arg) < 1e-9:
            return WindingResult(int(n_arg), float(raw.real), npts, min_abs)
    raise NonIntegerWinding(f"quadrature {raw:.9g} does not settle on the tracked winding {n_arg}")


def winding_details(phi, contour: Contour, cfg: AnalyticConfig | None = None) -> WindingResult:
    cfg = cfg or AnalyticConfig()
    contour.check_clearance(getattr(phi, "excluded_points", ()), cfg.clearance)
    total, raw, npts, min_abs = 0, 0.0, 0, math.inf
    for sign, pieces in contour.loops():
        r = _loop_winding(phi, pieces, cfg, contour.sampling)
        total += sign * r.winding
        raw += sign * r.raw
        npts += r.points
        min_abs = min(min_abs, r.min_abs)
    return WindingResult(total, raw, npts, min_abs)


def winding_number(phi, contour: Contour, cfg: AnalyticConfig | None = None) -> int:
    """Counterclockwise winding of Phi around 0 along ``contour``.

    Raises ZeroOnContour when |Phi| drops below the tolerance on the contour
    and NonIntegerWinding when refinement does not converge to an integer.
    """
    return winding_details(phi, contour, cfg).winding


def _jitter_values(cfg: AnalyticConfig) -> np.ndarray:
    return np.random.default_rng(cfg.seed).random(cfg.jitter_retries)


def count_zeros_in(phi, region: Contour, cfg: AnalyticConfig | None = None) -> tuple[int, Contour]:
    """Zero count with multiplicity, plus the (possibly jittered) region used."""
    cfg = cfg or AnalyticConfig()
    inside = region.encloses_excluded(getattr(phi, "excluded_points", ()))
    if inside:
        raise ContourError(f"region contains excluded points {[complex(p) for p in inside]}; use an annulus around them")
    us = _jitter_values(cfg)
    current = region
    last_error: ZeroOnContour | None = None
    for attempt in range(cfg.jitter_retries + 1):
        try:
            return winding_number(phi, current, cfg), current
        except ZeroOnContour as exc:
            last_error = exc
            if attempt == cfg.jitter_retries:
                break
            current = region.jittered(float(us[attempt]), 1 if attempt % 2 == 0 else -1)
    raise last_error


def count_zeros(phi, region: Contour, cfg: AnalyticConfig | None = None) -> int:
    """Number of zeros inside ``region`` counted with multiplicity.

    For an annulus around an excluded point the count is the difference of
    the outer and inner boundary windings, so the singularity contributes
    nothing.  A boundary that meets a zero is jittered by factors
    ``1 +/- 1e-3 u`` with seeded ``u``, up to ``cfg.jitter_retries`` times.
    """
    return count_zeros_in(phi, region, cfg)[0]
