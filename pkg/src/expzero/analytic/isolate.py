"""Zero isolation by recursive subdivision and Newton refinement.

Cells are rectangles (a rectangle region, or the bounding square of a disc)
or annular sectors (an annulus starts as four quarter sectors).  Every cell
is counted by the argument principle.  A cell holding exactly one zero is
handed to Newton; cells with more zeros are split into four children whose
counts must add up to the parent count.  A boundary that meets a zero moves
the split point by a seeded amount and tries again.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .contours import Contour, ContourError
from .winding import AnalyticConfig, NonIntegerWinding, ZeroOnContour, count_zeros_in, winding_number

__all__ = [
    "BudgetExceeded",
    "NewtonResult",
    "ZeroCertificate",
    "newton_refine",
    "isolate_zeros",
]

STATUSES = ("isolated", "cluster", "contour_failure")


class BudgetExceeded(RuntimeError):
    """Cell cap reached; ``certificates`` holds what was finished, sorted by box."""

    def __init__(self, message: str, certificates=()):
        super().__init__(message)
        self.certificates = list(certificates)


@dataclass(frozen=True)
class NewtonResult:
    z: complex
    residual: float
    iters: int
    converged: bool
    reason: str = ""


def newton_refine(phi, z0: complex, cfg: AnalyticConfig | None = None) -> NewtonResult:
    """Newton's method on the scaled pair (mant, dmant).

    Converged means the step fell below ``newton_tol * max(1, |z|)`` within
    ``newton_maxiter`` iterations.  Leaving the disc of radius
    ``divergence_radius`` or approaching an excluded point stops early.
    """
    cfg = cfg or AnalyticConfig()
    excluded = np.asarray(getattr(phi, "excluded_points", ()), dtype=complex)
    z = complex(z0)
    for it in range(1, cfg.newton_maxiter + 1):
        mant, dmant, _ = phi.scaled(np.array([z]))
        m, d = complex(mant[0]), complex(dmant[0])
        if m == 0:
            return NewtonResult(z, 0.0, it - 1, True)
        if d == 0 or not np.isfinite(d) or not np.isfinite(m):
            return NewtonResult(z, math.inf, it, False, "vanishing derivative")
        step = m / d
        z = z - step
        if not (abs(z) <= cfg.divergence_radius):
            return NewtonResult(z, math.inf, it, False, "diverged")
        if excluded.size and np.min(np.abs(z - excluded)) < cfg.clearance:
            return NewtonResult(z, math.inf, it, False, "hit excluded point")
        if abs(step) <= cfg.newton_tol * max(1.0, abs(z)):
            return NewtonResult(z, _residual(phi, z), it, True)
    return NewtonResult(z, _residual(phi, z), cfg.newton_maxiter, False, "iteration limit")


def _residual(phi, z: complex) -> float:
    mant, _, M = phi.scaled(np.array([z]))
    a = abs(complex(mant[0]))
    if a == 0:
        return 0.0
    log_r = math.log(a) + float(M[0])
    return math.inf if log_r > 700 else math.exp(log_r)


@dataclass(frozen=True)
class ZeroCertificate:
    """A cell, its zero count and the roots refined inside it."""

    box: Contour
    winding: int
    roots: tuple[NewtonResult, ...] = ()
    status: str = "isolated"
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad certificate status {self.status!r}")

    def to_json(self) -> dict:
        out = {"box": self.box.to_json(), "winding": self.winding, "status": self.status,
               "roots": [{"re": r.z.real, "im": r.z.imag, "residual": r.residual, "iters": r.iters}
                         for r in self.roots]}
        if self.note:
            out["note"] = self.note
        return out


# cell geometry -----------------------------------------------------------------

def _split(cell: Contour, s: float) -> list[Contour]:
    if cell.kind == "rectangle":
        x1, y1, x2, y2 = cell.corners
        xm, ym = x1 + s * (x2 - x1), y1 + s * (y2 - y1)
        return [Contour.rectangle(a, b, c, d, cell.sampling) for a, b, c, d in
                ((x1, y1, xm, ym), (xm, y1, x2, ym), (x1, ym, xm, y2), (xm, ym, x2, y2))]
    if cell.kind == "sector":
        r0, r1, t0, t1 = cell.r_inner, cell.radius, cell.theta0, cell.theta1
        rm = r0 * (r1 / r0) ** s
        tm = t0 + s * (t1 - t0)
        return [Contour.sector(cell.center, a, b, c, d, cell.sampling) for a, b, c, d in
                ((r0, rm, t0, tm), (r0, rm, tm, t1), (rm, r1, t0, tm), (rm, r1, tm, t1))]
    raise ContourError(f"cannot subdivide a {cell.kind}")


def _seeds(cell: Contour) -> list[complex]:
    if cell.kind == "rectangle":
        x1, y1, x2, y2 = cell.corners
        pts = [(0.5, 0.5), (0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)]
        return [complex(x1 + u * (x2 - x1), y1 + v * (y2 - y1)) for u, v in pts]
    r0, r1, t0, t1 = cell.r_inner, cell.radius, cell.theta0, cell.theta1
    pts = [(0.5, 0.5), (0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)]
    return [cell.center + (r0 + u * (r1 - r0)) * complex(math.cos(t0 + v * (t1 - t0)), math.sin(t0 + v * (t1 - t0)))
            for u, v in pts]


def _initial_cells(region: Contour) -> list[Contour]:
    if region.kind == "rectangle":
        return [region]
    if region.kind == "circle":
        x1, y1, x2, y2 = region.bounding_box()
        return [Contour.rectangle(x1, y1, x2, y2, region.sampling)]
    if region.kind == "annulus":
        q = math.pi / 2
        return [Contour.sector(region.center, region.r_inner, region.radius, k * q, (k + 1) * q, region.sampling)
                for k in range(4)]
    if region.kind == "sector":
        return [region]
    raise ContourError(f"unsupported region kind {region.kind!r}")


def _outside(cell: Contour, region: Contour) -> bool:
    """True when the cell lies entirely outside a disc region."""
    if region.kind != "circle" or cell.kind != "rectangle":
        return False
    x1, y1, x2, y2 = cell.corners
    c = region.center
    dx = max(x1 - c.real, 0.0, c.real - x2)
    dy = max(y1 - c.imag, 0.0, c.imag - y2)
    return math.hypot(dx, dy) >= region.radius


def _inside(certs, region: Contour):
    """Drop certificates of a disc's bounding square whose roots fall outside the disc."""
    if region.kind != "circle":
        return list(certs)
    return [c for c in certs if not c.roots or all(region.contains(r.z) for r in c.roots)]


# subdivision ---------------------------------------------------------------------

@dataclass
class _Work:
    cell: Contour
    count: int


@dataclass
class _Outcome:
    certificates: list = field(default_factory=list)
    children: list = field(default_factory=list)


def _refine_single(phi, cell: Contour, cfg: AnalyticConfig) -> ZeroCertificate:
    last = None
    for seed in _seeds(cell):
        res = newton_refine(phi, seed, cfg)
        last = res
        if res.converged and cell.contains(res.z) and res.residual < cfg.residual_tol:
            return ZeroCertificate(cell, 1, (res,), "isolated")
    why = last.reason if last and not last.converged else "root outside cell or residual too large"
    return ZeroCertificate(cell, 1, (), "cluster", f"newton: {why}")


def _process(phi, work: _Work, cfg: AnalyticConfig, us: np.ndarray) -> _Outcome:
    cell, count = work.cell, work.count
    out = _Outcome()
    if count == 1:
        cert = _refine_single(phi, cell, cfg)
        if cert.status == "isolated" or cell.size() <= cfg.min_cell_size:
            out.certificates.append(cert)
            return out
    elif cell.size() <= cfg.min_cell_size:
        out.certificates.append(ZeroCertificate(cell, count, (), "cluster", "minimum cell size reached"))
        return out
    fractions = [0.5] + [0.5 + 0.2 * (u - 0.5) for u in us]
    note = ""
    for s in fractions:
        try:
            kids = _split(cell, s)
            counts = [winding_number(phi, k, cfg) for k in kids]
        except (ZeroOnContour, NonIntegerWinding) as exc:
            note = str(exc)
            continue
        if sum(counts) != count or min(counts) < 0:
            note = f"children count {counts} do not add up to {count}"
            continue
        out.children = [_Work(k, n) for k, n in zip(kids, counts) if n > 0]
        return out
    out.certificates.append(ZeroCertificate(cell, count, (), "contour_failure", note))
    return out


def isolate_zeros(phi, region: Contour, max_zeros: int | None = None,
                  cfg: AnalyticConfig | None = None) -> list[ZeroCertificate]:
    """Certificates covering every zero of ``phi`` inside ``region``.

    Subdivision runs level by level; the cells of one level are independent
    and are processed by a pool of ``cfg.threads`` workers.  Processing
    stops after the level in which ``max_zeros`` isolated certificates have
    been collected.  Output is sorted by box, so it does not depend on
    scheduling.  Raises BudgetExceeded when more than ``cfg.cell_cap``
    cells would be examined.
    """
    cfg = cfg or AnalyticConfig()
    excluded = getattr(phi, "excluded_points", ())
    if region.encloses_excluded(excluded):
        raise ContourError("region contains excluded points; use an annulus around them")
    total, used = count_zeros_in(phi, region, cfg)
    level: list[_Work] = []
    for cell in _initial_cells(used):
        if _outside(cell, used):
            continue
        if cell.encloses_excluded(excluded):
            raise ContourError("bounding box of the disc contains an excluded point; use a rect or annulus region")
        level.append(_Work(cell, None))
    if len(level) == 1 and level[0].cell == used:
        level[0].count = total
    else:
        counts = [winding_number(phi, w.cell, cfg) for w in level]
        for w, n in zip(level, counts):
            w.count = n
        level = [w for w in level if w.count > 0]
    us = np.random.default_rng(cfg.seed).random(cfg.jitter_retries)
    certs: list[ZeroCertificate] = []
    examined = len(level)
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        while level:
            if pool is None:
                outcomes = [_process(phi, w, cfg, us) for w in level]
            else:
                outcomes = list(pool.map(lambda w: _process(phi, w, cfg, us), level))
            nxt = []
            for o in outcomes:
                certs.extend(o.certificates)
                nxt.extend(w for w in o.children if not _outside(w.cell, used))
            examined += 4 * len(level)
            if max_zeros is not None and sum(c.status == "isolated" for c in certs) >= max_zeros:
                break
            if examined + 4 * len(nxt) > cfg.cell_cap:
                done = sorted(_inside(certs, used), key=lambda c: c.box.sort_key())
                raise BudgetExceeded(f"more than {cfg.cell_cap} cells needed; "
                                     f"{sum(c.status == 'isolated' for c in done)} zeros isolated so far", done)
            level = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    certs = _inside(certs, used)
    certs.sort(key=lambda c: c.box.sort_key())
    if max_zeros is not None:
        iso = [c for c in certs if c.status == "isolated"]
        if len(iso) > max_zeros:
            keep = set(id(c) for c in iso[:max_zeros])
            certs = [c for c in certs if c.status != "isolated" or id(c) in keep]
    return certs
