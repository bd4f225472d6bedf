"""Static SVG drawings of polygons, triangulations, dual curves and skeleta.

One lattice unit is 40 pixels and every panel has a margin of one unit.
Panels are laid out left to right: the polygon with its triangulation, the
dual curve, then the skeleton.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exceptions import PreconditionError
from .lattice import LatticePolygon

UNIT = 40


def _f(x) -> str:
    return f"{float(x):.2f}".rstrip("0").rstrip(".")


class _Panel:
    def __init__(self, xmin, ymin, xmax, ymax, offset: float):
        self.xmin, self.ymin, self.xmax, self.ymax = xmin, ymin, xmax, ymax
        self.offset = offset

    @property
    def width(self) -> float:
        return float(self.xmax - self.xmin + 2) * UNIT

    @property
    def height(self) -> float:
        return float(self.ymax - self.ymin + 2) * UNIT

    def xy(self, p) -> tuple:
        x = self.offset + float(p[0] - self.xmin + 1) * UNIT
        y = float(self.ymax - p[1] + 1) * UNIT
        return x, y


def _line(a, b, cls: str) -> str:
    return f'<line class="{cls}" x1="{_f(a[0])}" y1="{_f(a[1])}" x2="{_f(b[0])}" y2="{_f(b[1])}"/>'


def _dot(a, cls: str, r: int = 3) -> str:
    return f'<circle class="{cls}" cx="{_f(a[0])}" cy="{_f(a[1])}" r="{r}"/>'


def _polygon_panel(p: LatticePolygon, t, offset: float) -> tuple:
    xs = [q[0] for q in p.vertices]
    ys = [q[1] for q in p.vertices]
    pan = _Panel(min(xs), min(ys), max(xs), max(ys), offset)
    out = []
    if t is not None:
        for a, b in t.edges:
            out.append(_line(pan.xy(t.points[a]), pan.xy(t.points[b]), "edge"))
    else:
        for a, b in p.edges:
            out.append(_line(pan.xy(a), pan.xy(b), "edge"))
    for q in p.lattice_points:
        out.append(_dot(pan.xy(q), "interior" if q in set(p.interior_points) else "point"))
    return pan, out


def _clip_ray(pan: _Panel, start, d) -> tuple:
    # walk along the ray until it leaves the panel box
    best = None
    lo = (Fraction(pan.xmin - 1), Fraction(pan.ymin - 1))
    hi = (Fraction(pan.xmax + 1), Fraction(pan.ymax + 1))
    for k in range(2):
        if d[k] == 0:
            continue
        bound = hi[k] if d[k] > 0 else lo[k]
        s = (bound - start[k]) / d[k]
        if s >= 0 and (best is None or s < best):
            best = s
    if best is None:
        best = Fraction(0)
    return (start[0] + best * d[0], start[1] + best * d[1])


def _curve_panel(curve, offset: float) -> tuple:
    vs = curve.vertices
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    pad = span / 4
    pan = _Panel(min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad, offset)
    out = []
    for _, (t1, t2), _ in curve.bounded_edges:
        out.append(_line(pan.xy(vs[t1]), pan.xy(vs[t2]), "curve"))
    for _, ti, d in curve.rays:
        end = _clip_ray(pan, vs[ti], d)
        out.append(_line(pan.xy(vs[ti]), pan.xy(end), "ray"))
    for v in vs:
        out.append(_dot(pan.xy(v), "vertex", 2))
    return pan, out


def _skeleton_panel(graph, offset: float) -> tuple:
    n = len(graph.vertices)
    radius = 2
    pan = _Panel(-radius - 1, -radius - 1, radius + 1, radius + 1, offset)
    pos = {}
    for k, v in enumerate(graph.vertices):
        ang = 2 * math.pi * k / max(n, 1) + math.pi / 2
        pos[v] = pan.xy((radius * math.cos(ang), radius * math.sin(ang)))
    out = []
    seen: dict = {}
    for u, v, length, _ in graph.edges:
        key = (min(u, v), max(u, v))
        k = seen.get(key, 0)
        seen[key] = k + 1
        a, b = pos[u], pos[v]
        if u == v:
            r = UNIT * (0.4 + 0.2 * k)
            cx, cy = pan.xy((0, 0))
            dx, dy = a[0] - cx, a[1] - cy
            nrm = math.hypot(dx, dy) or 1.0
            c = (a[0] + dx / nrm * r, a[1] + dy / nrm * r)
            out.append(f'<circle class="skeleton" cx="{_f(c[0])}" cy="{_f(c[1])}" r="{_f(r)}" fill="none"/>')
            label = (c[0] + dx / nrm * r, c[1] + dy / nrm * r)
        else:
            mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
            dx, dy = b[0] - a[0], b[1] - a[1]
            nrm = math.hypot(dx, dy) or 1.0
            bend = (k - (k > 0) * 0.5) * UNIT * (1 if k % 2 else -1) if k else 0.0
            c = (mx - dy / nrm * bend, my + dx / nrm * bend)
            out.append(
                f'<path class="skeleton" d="M {_f(a[0])} {_f(a[1])} Q {_f(c[0])} {_f(c[1])} {_f(b[0])} {_f(b[1])}" fill="none"/>'
            )
            label = c
        out.append(f'<text x="{_f(label[0])}" y="{_f(label[1])}">{Fraction(length)}</text>')
    for v in graph.vertices:
        out.append(_dot(pos[v], "vertex"))
    return pan, out


STYLE = (
    "<style>.edge{stroke:#333;stroke-width:1.5}.curve,.ray{stroke:#c33;stroke-width:2}"
    ".skeleton{stroke:#36c;stroke-width:2}.point{fill:#333}.interior{fill:#fff;stroke:#333}"
    ".vertex{fill:#000}text{font:10px sans-serif}</style>"
)


def render_svg(polygon: LatticePolygon | None = None, triangulation=None, curve=None, skeleton=None) -> str:
    """SVG text for the selected scene; identical inputs give identical bytes."""
    if polygon is None and triangulation is not None:
        polygon = triangulation.polygon
    if polygon is None and curve is None and skeleton is None:
        raise PreconditionError("empty scene")
    panels = []
    offset = 0.0
    for kind, obj in (("polygon", polygon), ("curve", curve), ("skeleton", skeleton)):
        if obj is None:
            continue
        if kind == "polygon":
            pan, body = _polygon_panel(obj, triangulation, offset)
        elif kind == "curve":
            pan, body = _curve_panel(obj, offset)
        else:
            pan, body = _skeleton_panel(obj, offset)
        panels.append((pan, body))
        offset += pan.width
    width = offset
    height = max(pan.height for pan, _ in panels)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        STYLE,
    ]
    for _, body in panels:
        lines.append("<g>")
        lines.extend(body)
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
