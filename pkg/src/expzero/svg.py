"""Static SVG pictures of regions, certificates and excluded points."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .analytic.contours import Contour, Segment

__all__ = ["render_svg"]

SIZE = 640
PAD = 24
COLORS = {"isolated": "#1b7837", "cluster": "#d95f02", "contour_failure": "#b2182b"}


class _Frame:
    def __init__(self, box):
        x1, y1, x2, y2 = box
        span = max(x2 - x1, y2 - y1) or 1.0
        self.x0, self.y0 = (x1 + x2) / 2 - span / 2, (y1 + y2) / 2 - span / 2
        self.k = (SIZE - 2 * PAD) / span

    def __call__(self, z: complex) -> tuple[float, float]:
        return PAD + (z.real - self.x0) * self.k, SIZE - PAD - (z.imag - self.y0) * self.k


def _path(contour: Contour, frame: _Frame, n: int = 96) -> str:
    parts = []
    for _, loop in contour.loops():
        pts = []
        for piece in loop:
            m = 2 if isinstance(piece, Segment) else n
            for j in range(m):
                pts.append(complex(piece.point(j / m)))
        xs = [frame(p) for p in pts]
        parts.append("M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in xs) + " Z")
    return " ".join(parts)


def render_svg(region: Contour, certificates=(), excluded=(), title: str = "") -> str:
    """SVG text: region outline, certificate cells, zero markers and excluded-point crosses."""
    frame = _Frame(region.bounding_box())
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
           '<rect width="100%" height="100%" fill="white"/>']
    if title:
        out.append(f'<text x="{PAD}" y="{PAD - 6}" font-family="monospace" font-size="12">{escape(title)}</text>')
    out.append(f'<path d="{_path(region, frame)}" fill="none" stroke="black" stroke-width="1.5" fill-rule="evenodd"/>')
    for cert in certificates:
        color = COLORS.get(cert.status, "gray")
        out.append(f'<path d="{_path(cert.box, frame, 24)}" fill="none" stroke="{color}" stroke-width="0.7"/>')
        for r in cert.roots:
            x, y = frame(r.z)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
    for p in excluded:
        x, y = frame(complex(p))
        out.append(f'<path d="M {x - 5:.2f} {y - 5:.2f} L {x + 5:.2f} {y + 5:.2f} M {x - 5:.2f} {y + 5:.2f} '
                   f'L {x + 5:.2f} {y - 5:.2f}" stroke="blue" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
