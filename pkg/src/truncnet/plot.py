"""Plain SVG rendering of 1-D and 2-D data sets, cones and decision regions.

No plotting library is used: the output is a small hand-written SVG so that
figures are dependency-free and diff cleanly.
"""

from xml.sax.saxutils import escape

import numpy as np

from .cones import PolyhedralCone, Simplex
from .constructors import lift_and_cone
from .exceptions import UnsupportedDim
from .network import forward
from .truncation import TruncationParams, truncate
from .verification import DEFAULT_LABELS, nearest_label

CLASS_COLORS = ("#1f77b4", "#d62728")
REGION_COLORS = ("#c6dbef", "#fcbba1")


class _Canvas:
    def __init__(self, points, size, pad=0.08):
        pts = np.vstack(points)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = max(float(np.max(hi - lo)), 1e-9)
        mid = (lo + hi) / 2
        self.lo = mid - span * (0.5 + pad)
        self.span = span * (1 + 2 * pad)
        self.size = size
        self.items = []

    def xy(self, pt):
        u = (pt[0] - self.lo[0]) / self.span * self.size
        v = self.size - (pt[1] - self.lo[1]) / self.span * self.size
        return u, v

    def add(self, s):
        self.items.append(s)

    def circle(self, pt, r, fill, stroke="none", opacity=1.0):
        u, v = self.xy(pt)
        self.add(f'<circle cx="{u:.2f}" cy="{v:.2f}" r="{r}" fill="{fill}" '
                 f'stroke="{stroke}" fill-opacity="{opacity}"/>')

    def line(self, a, b, stroke="#333", width=1.5, dash=None):
        (u1, v1), (u2, v2) = self.xy(a), self.xy(b)
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<line x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
                 f'stroke="{stroke}" stroke-width="{width}"{d}/>')

    def polygon(self, pts, stroke="#333", fill="none"):
        coords = " ".join(f"{u:.2f},{v:.2f}" for u, v in map(self.xy, pts))
        self.add(f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
                 f'stroke-width="1.5"/>')

    def rect(self, corner, w, h, fill, opacity):
        u, v = self.xy(corner)
        pw, ph = w / self.span * self.size, h / self.span * self.size
        self.add(f'<rect x="{u:.2f}" y="{v - ph:.2f}" width="{pw + 0.05:.2f}" '
                 f'height="{ph + 0.05:.2f}" fill="{fill}" fill-opacity="{opacity}"/>')

    def text(self, pt, s):
        u, v = self.xy(pt)
        self.add(f'<text x="{u + 4:.2f}" y="{v - 4:.2f}" font-size="11" '
                 f'font-family="sans-serif">{escape(s)}</text>')

    def render(self, title=""):
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">')
        body = [head, f"<title>{escape(title)}</title>",
                f'<rect width="{self.size}" height="{self.size}" fill="white"/>']
        return "\n".join(body + self.items + ["</svg>"]) + "\n"


def _cone_in_view(geometry):
    """First-layer cone and input embedding implied by the companion geometry."""
    if isinstance(geometry, Simplex):
        emb, cone = lift_and_cone(geometry)
        return cone, emb
    if isinstance(geometry, PolyhedralCone) and geometry.dim >= 2:
        return geometry, None
    return None, None


def render_svg(data, geometry=None, net=None, show_truncated=False, grid=60, size=480,
               labels=DEFAULT_LABELS, title="truncnet"):
    """Render ``data`` with its companion geometry and optional network regions.

    One-dimensional data are drawn in the lifted plane ``(x, 0)`` together
    with the cone erected over the interval. With ``show_truncated`` the
    images under the first truncation map are overlaid as hollow markers
    (projected to the first two coordinates when the lift goes to R^3).

    Raises
    ------
    UnsupportedDim
        For data of dimension greater than 2.
    """
    dim = data.dim
    if dim > 2:
        raise UnsupportedDim(f"can only plot 1-D or 2-D data, got dimension {dim}")
    cone, emb = _cone_in_view(geometry)
    view = data.X if dim == 2 else np.hstack([data.X, np.zeros((len(data), 1))])

    truncated = None
    if show_truncated and cone is not None:
        t = TruncationParams(cone.W, cone.b)
        lifted = data.X if emb is None else data.X @ emb.T
        truncated = truncate(t, lifted)[:, :2]

    extent = [view]
    if cone is not None and cone.dim <= 3:
        extent.append(cone.p[None, :2])
    if isinstance(geometry, Simplex) and dim == 2:
        extent.append(geometry.vertices)
    if truncated is not None:
        extent.append(truncated)
    canvas = _Canvas(extent, size)

    if net is not None:
        _draw_regions(canvas, net, dim, grid, np.asarray(labels, dtype=float))

    if isinstance(geometry, Simplex) and dim == 2:
        canvas.polygon(geometry.vertices)
    if cone is not None and cone.dim == 2:
        reach = canvas.span
        for v in cone.edges:
            u = v / np.linalg.norm(v)
            canvas.line(cone.p, cone.p + reach * u)
            canvas.line(cone.p, cone.p - reach * u, dash="4,3")
        canvas.circle(cone.p, 3.5, "#000")
        canvas.text(cone.p, "p")
    if isinstance(geometry, Simplex) and dim == 1:
        canvas.line((geometry.vertices.min(), 0.0), (geometry.vertices.max(), 0.0),
                    stroke="#000", width=3)

    for x, label in zip(view, data.y):
        canvas.circle(x, 2.5, CLASS_COLORS[label - 1], opacity=0.85)
    if truncated is not None:
        for x, label in zip(truncated, data.y):
            canvas.circle(x, 4, "none", stroke=CLASS_COLORS[label - 1])
    return canvas.render(title)


def _draw_regions(canvas, net, dim, grid, labels):
    lo, span = canvas.lo, canvas.span
    step = span / grid
    centers = lo[0] + step * (np.arange(grid) + 0.5)
    if dim == 1:
        cls = nearest_label(forward(net, centers[:, None])[-1], labels)
        for cx, c in zip(centers, cls):
            canvas.rect((cx - step / 2, lo[1]), step, span, REGION_COLORS[c], 0.6)
        return
    ys = lo[1] + step * (np.arange(grid) + 0.5)
    gx, gy = np.meshgrid(centers, ys)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    cls = nearest_label(forward(net, pts)[-1], labels)
    for (cx, cy), c in zip(pts, cls):
        canvas.rect((cx - step / 2, cy - step / 2), step, step, REGION_COLORS[c], 0.6)
