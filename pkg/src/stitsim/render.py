"""SVG rendering of 2-D tessellations and hyperplane patterns.

One length unit maps to 100 px, strokes are 1 px; the y axis is flipped so
drawings match the usual mathematical orientation.
"""

from __future__ import annotations

import numpy as np

from . import geometry as geo
from .pht import PoissonHyperplanePattern
from .stit import Tessellation

SCALE = 100.0


def _bbox(window) -> tuple[float, float, float, float]:
    v = window.vertices()
    return (float(v[:, 0].min()), float(v[:, 1].min()),
            float(v[:, 0].max()), float(v[:, 1].max()))


class _Canvas:
    def __init__(self, window):
        self.x0, self.y0, self.x1, self.y1 = _bbox(window)
        self.w = (self.x1 - self.x0) * SCALE
        self.h = (self.y1 - self.y0) * SCALE
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w:.0f}" '
            f'height="{self.h:.0f}" viewBox="0 0 {self.w:.2f} {self.h:.2f}">',
            f'<rect width="{self.w:.2f}" height="{self.h:.2f}" fill="white"/>',
        ]

    def pt(self, x, y) -> str:
        return f"{(x - self.x0) * SCALE:.2f} {(self.y1 - y) * SCALE:.2f}"

    def path(self, pts, closed: bool, stroke: str = "black"):
        d = "M" + "L".join(self.pt(x, y) for x, y in pts) + ("Z" if closed else "")
        self.parts.append(
            f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="1"/>')

    def text(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _outline(P) -> list[tuple[float, float]]:
    if isinstance(P, geo.Box):
        (x0, y0), (x1, y1) = P.lo, P.hi
        return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    return list(P.points)


def render_tessellation(T: Tessellation) -> str:
    if T.window.dim != 2:
        raise ValueError("SVG rendering is 2-D only")
    cv = _Canvas(T.window)
    for cell in T.cells:
        cv.path(_outline(cell), closed=True)
    cv.path(_outline(T.window), closed=True)
    return cv.text()


def _chord(h: geo.Hyperplane, window) -> tuple | None:
    """Endpoints of the hyperplane's trace inside the window."""
    u = h.normal
    v = np.array([-u[1], u[0]])
    p0 = h.d * u
    t_lo, t_hi = -np.inf, np.inf
    for n, c in window.facets():
        a = float(n @ v)
        b = c - float(n @ p0)
        if abs(a) < 1e-14:
            if b < 0:
                return None
            continue
        t = b / a
        if a > 0:
            t_hi = min(t_hi, t)
        else:
            t_lo = max(t_lo, t)
    if t_lo >= t_hi:
        return None
    return tuple(p0 + t_lo * v), tuple(p0 + t_hi * v)


def render_pattern(pattern: PoissonHyperplanePattern) -> str:
    if pattern.window.dim != 2:
        raise ValueError("SVG rendering is 2-D only")
    cv = _Canvas(pattern.window)
    for h in pattern.hyperplanes:
        seg = _chord(h, pattern.window)
        if seg is not None:
            cv.path([seg[0], seg[1]], closed=False)
    cv.path(_outline(pattern.window), closed=True)
    return cv.text()
