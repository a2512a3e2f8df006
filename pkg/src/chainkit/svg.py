"""Static SVG drawings of chains, with optional hull or ellipse overlay.

The y axis is flipped so apexes drawn above the x axis point up.
"""

import math
from xml.sax.saxutils import quoteattr

import numpy as np

from .chain import as_chain
from .geometry import convex_hull

ELLIPSE_SEGMENTS = 128
MARGIN = 0.05


def ellipse_polygon(f1, f2, c, segments=ELLIPSE_SEGMENTS):
    """Vertices of a polygon circumscribing the focal ellipse E(f1, f2, c),
    so every point of the ellipse lies inside the drawn outline."""
    f1 = np.asarray(f1, dtype=np.float64)
    f2 = np.asarray(f2, dtype=np.float64)
    f = float(np.hypot(*(f2 - f1)))
    center = 0.5 * (f1 + f2)
    major = 0.5 * c * f
    minor = math.sqrt(max(major * major - 0.25 * f * f, 0.0))
    u = (f2 - f1) / f if f > 0 else np.array([1.0, 0.0])
    w = np.array([-u[1], u[0]])
    t = np.linspace(0.0, 2.0 * math.pi, segments, endpoint=False)
    grow = 1.0 / math.cos(math.pi / segments)
    major, minor = major * grow, minor * grow
    return center + np.outer(major * np.cos(t), u) + np.outer(minor * np.sin(t), w)


def _fmt(pts):
    return " ".join(f"{x + 0.0:.9g},{0.0 - y:.9g}" for x, y in pts)


def render(P, overlay="none", ellipse=None, stroke_width=None):
    """SVG 1.1 document as a string.

    ``overlay`` is "none", "hull" or "ellipse"; the latter needs
    ``ellipse=(i, k, c)`` with 1-based vertex indices.
    """
    P = as_chain(P)
    V = P.vertices
    shapes = []
    extra = np.empty((0, 2))
    if overlay == "hull":
        hull = np.array(convex_hull(V, tol=0.0))
        shapes.append(f'<polygon class="hull" points="{_fmt(hull)}" '
                      'fill="none" stroke="#1f77b4" stroke-dasharray="4 2"/>')
    elif overlay == "ellipse":
        if ellipse is None:
            raise ValueError("ellipse overlay needs (i, k, c)")
        i, k, c = ellipse
        poly = ellipse_polygon(V[i - 1], V[k - 1], c)
        extra = poly
        shapes.append(f'<polygon class="ellipse" points="{_fmt(poly)}" '
                      'fill="none" stroke="#d62728"/>')
    elif overlay != "none":
        raise ValueError(f"unknown overlay {overlay!r}")

    allpts = np.vstack((V, extra))
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    pad = MARGIN * span
    x0, y0 = lo[0] - pad, -hi[1] - pad
    w, h = (hi[0] - lo[0]) + 2 * pad, (hi[1] - lo[1]) + 2 * pad
    sw = stroke_width if stroke_width is not None else span / 400.0
    view = f"{x0:.9g} {y0:.9g} {w:.9g} {h:.9g}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox={quoteattr(view)}>',
        f'<g stroke-width="{sw:.9g}" stroke-linejoin="round">',
        f'<polyline class="chain" points="{_fmt(V)}" fill="none" stroke="black"/>',
        *shapes,
        "</g>",
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def write_svg(P, path, **kw):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(P, **kw))
