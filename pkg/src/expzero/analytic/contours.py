"""Closed contours built from line segments and circular arcs."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = ["Segment", "Arc", "Contour", "ContourError"]

TWO_PI = 2.0 * math.pi


class ContourError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    def point(self, t):
        return self.a + (self.b - self.a) * np.asarray(t)

    def deriv(self, t):
        return np.full(np.shape(t), self.b - self.a, dtype=complex)

    def distance(self, p: complex) -> float:
        d = self.b - self.a
        if d == 0:
            return abs(p - self.a)
        t = ((p - self.a) * d.conjugate()).real / abs(d) ** 2
        t = min(1.0, max(0.0, t))
        return abs(p - (self.a + t * d))

    @property
    def length(self) -> float:
        return abs(self.b - self.a)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    t0: float
    t1: float  # t1 < t0 runs clockwise

    def point(self, t):
        th = self.t0 + (self.t1 - self.t0) * np.asarray(t)
        return self.center + self.radius * np.exp(1j * th)

    def deriv(self, t):
        th = self.t0 + (self.t1 - self.t0) * np.asarray(t)
        return 1j * self.radius * (self.t1 - self.t0) * np.exp(1j * th)

    def distance(self, p: complex) -> float:
        w = p - self.center
        lo, hi = sorted((self.t0, self.t1))
        if hi - lo >= TWO_PI - 1e-15:
            return abs(abs(w) - self.radius)
        ang = math.atan2(w.imag, w.real)
        k = math.ceil((lo - ang) / TWO_PI)
        ang += k * TWO_PI
        if ang <= hi:
            return abs(abs(w) - self.radius)
        ends = (self.center + self.radius * np.exp(1j * self.t0), self.center + self.radius * np.exp(1j * self.t1))
        return min(abs(p - e) for e in ends)

    @property
    def length(self) -> float:
        return abs(self.radius * (self.t1 - self.t0))


@dataclass(frozen=True)
class Contour:
    """Counterclockwise boundary of a disc, rectangle, annulus or annular sector.

    An annulus is the outer circle counterclockwise together with the inner
    circle clockwise.  ``sampling`` is the initial point count.
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    r_inner: float = 0.0
    theta0: float = 0.0
    theta1: float = TWO_PI
    corners: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    sampling: int = 1024

    @classmethod
    def circle(cls, center: complex, radius: float, sampling: int = 1024) -> "Contour":
        if radius <= 0:
            raise ContourError("radius must be positive")
        return cls("circle", complex(center), float(radius), sampling=sampling)

    @classmethod
    def rectangle(cls, x1: float, y1: float, x2: float, y2: float, sampling: int = 1024) -> "Contour":
        if not (x2 > x1 and y2 > y1):
            raise ContourError("rectangle corners must satisfy x1 < x2 and y1 < y2")
        return cls("rectangle", corners=(float(x1), float(y1), float(x2), float(y2)), sampling=sampling)

    @classmethod
    def annulus(cls, center: complex, r_inner: float, r_outer: float, sampling: int = 1024) -> "Contour":
        if not (0 < r_inner < r_outer):
            raise ContourError("annulus radii must satisfy 0 < r_inner < r_outer")
        return cls("annulus", complex(center), float(r_outer), float(r_inner), sampling=sampling)

    @classmethod
    def sector(cls, center: complex, r_inner: float, r_outer: float, theta0: float, theta1: float,
               sampling: int = 1024) -> "Contour":
        if not (0 < r_inner < r_outer) or not (theta0 < theta1 <= theta0 + TWO_PI):
            raise ContourError("malformed annular sector")
        return cls("sector", complex(center), float(r_outer), float(r_inner), float(theta0), float(theta1),
                   sampling=sampling)

    # geometry ------------------------------------------------------------

    def loops(self) -> list[tuple[int, list]]:
        """Closed loops as (orientation sign, pieces)."""
        c = self.center
        if self.kind == "circle":
            return [(1, [Arc(c, self.radius, 0.0, TWO_PI)])]
        if self.kind == "annulus":
            return [(1, [Arc(c, self.radius, 0.0, TWO_PI)]), (-1, [Arc(c, self.r_inner, 0.0, TWO_PI)])]
        if self.kind == "rectangle":
            x1, y1, x2, y2 = self.corners
            p = [complex(x1, y1), complex(x2, y1), complex(x2, y2), complex(x1, y2)]
            return [(1, [Segment(p[i], p[(i + 1) % 4]) for i in range(4)])]
        if self.kind == "sector":
            r0, r1, t0, t1 = self.r_inner, self.radius, self.theta0, self.theta1
            e0, e1 = np.exp(1j * t0), np.exp(1j * t1)
            return [(1, [Arc(c, r1, t0, t1), Segment(c + r1 * e1, c + r0 * e1),
                         Arc(c, r0, t1, t0), Segment(c + r0 * e0, c + r1 * e0)])]
        raise ContourError(f"unknown contour kind {self.kind!r}")

    def pieces(self) -> list:
        return [p for _, loop in self.loops() for p in loop]

    def distance_to(self, p: complex) -> float:
        return min(piece.distance(complex(p)) for piece in self.pieces())

    def contains(self, p: complex) -> bool:
        """Strict interior membership of the bounded region."""
        p = complex(p)
        if self.kind == "circle":
            return abs(p - self.center) < self.radius
        if self.kind == "annulus":
            return self.r_inner < abs(p - self.center) < self.radius
        if self.kind == "rectangle":
            x1, y1, x2, y2 = self.corners
            return x1 < p.real < x2 and y1 < p.imag < y2
        w = p - self.center
        r = abs(w)
        if not (self.r_inner < r < self.radius):
            return False
        ang = math.atan2(w.imag, w.real)
        ang += math.ceil((self.theta0 - ang) / TWO_PI) * TWO_PI
        return self.theta0 < ang < self.theta1

    def size(self) -> float:
        if self.kind == "rectangle":
            x1, y1, x2, y2 = self.corners
            return max(x2 - x1, y2 - y1)
        if self.kind == "sector":
            return max(self.radius - self.r_inner, self.radius * (self.theta1 - self.theta0))
        return 2 * self.radius

    def bounding_box(self) -> tuple[float, float, float, float]:
        if self.kind == "rectangle":
            return self.corners
        c, r = self.center, self.radius
        return (c.real - r, c.imag - r, c.real + r, c.imag + r)

    def check_clearance(self, excluded, clearance: float):
        for p in excluded:
            d = self.distance_to(p)
            if d < clearance:
                raise ContourError(f"contour passes within {d:.3e} of excluded point {p}")

    def encloses_excluded(self, excluded) -> list[complex]:
        return [p for p in excluded if self.contains(p)]

    def jittered(self, u: float, sign: int) -> "Contour":
        f = 1.0 + sign * 1e-3 * u
        if self.kind == "circle":
            return replace(self, radius=self.radius * f)
        if self.kind in ("annulus", "sector"):
            return replace(self, radius=self.radius * f, r_inner=self.r_inner / f)
        x1, y1, x2, y2 = self.corners
        cx, cy, hx, hy = (x1 + x2) / 2, (y1 + y2) / 2, (x2 - x1) / 2 * f, (y2 - y1) / 2 * f
        return replace(self, corners=(cx - hx, cy - hy, cx + hx, cy + hy))

    def to_json(self) -> dict:
        if self.kind == "rectangle":
            x1, y1, x2, y2 = self.corners
            return {"kind": "rect", "x1": x1, "y1": y1, "x2": x2, "y2": y2}
        base = {"kind": {"circle": "disc"}.get(self.kind, self.kind),
                "cx": self.center.real, "cy": self.center.imag}
        if self.kind == "circle":
            base["r"] = self.radius
        else:
            base.update(r1=self.r_inner, r2=self.radius)
        if self.kind == "sector":
            base.update(theta0=self.theta0, theta1=self.theta1)
        return base

    def sort_key(self) -> tuple:
        j = self.to_json()
        return (j["kind"],) + tuple(v for k, v in sorted(j.items()) if k != "kind")
