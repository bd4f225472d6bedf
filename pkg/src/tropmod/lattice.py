"""Lattice polygons and their interior and relaxed polygons.

Points are plain ``(x, y)`` tuples of ints; rational points use
``fractions.Fraction`` coordinates.  Nothing in this module touches floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, floor, gcd
from typing import Iterable, NamedTuple, Sequence, Union

from .exceptions import PreconditionError, TropmodError

Point = tuple  # (x, y) with int or Fraction entries


def cross(o, a, b):
    """Twice the signed area of the triangle ``o, a, b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull vertices without collinear points.

    Starts at the lexicographically smallest point.  Works for any exact
    coordinate type.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def primitive(v: Sequence[int]) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g) if g else (0, 0)


def lattice_length(a: Point, b: Point) -> int:
    """Number of lattice steps on the segment between two lattice points."""
    return gcd(b[0] - a[0], b[1] - a[1])


class HalfPlane(NamedTuple):
    """The closed half-plane ``alpha*x + beta*y <= c`` with a primitive normal."""

    alpha: int
    beta: int
    c: int

    def value(self, p: Point):
        return self.alpha * p[0] + self.beta * p[1]

    def contains(self, p: Point) -> bool:
        return self.value(p) <= self.c

    def on_line(self, p: Point) -> bool:
        return self.value(p) == self.c

    def distance(self, p: Point):
        """Lattice distance of ``p`` to the boundary line, positive inside."""
        return self.c - self.value(p)


def _edge_half_plane(a: Point, b: Point) -> HalfPlane:
    dx, dy = primitive((b[0] - a[0], b[1] - a[1]))
    # outward normal of a counterclockwise edge
    alpha, beta = dy, -dx
    return HalfPlane(alpha, beta, alpha * a[0] + beta * a[1])


class LatticePolygon:
    """A two-dimensional convex lattice polygon.

    The constructor accepts any finite set of lattice points and keeps the
    vertices of their convex hull, counterclockwise and starting at the
    lexicographically smallest one.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = []
        for p in points:
            x, y = p
            if isinstance(x, bool) or isinstance(y, bool) or int(x) != x or int(y) != y:
                raise PreconditionError(f"non-integer lattice point {p!r}")
            pts.append((int(x), int(y)))
        if not pts:
            raise PreconditionError("empty point set")
        hull = convex_hull(pts)
        if len(hull) < 3:
            raise PreconditionError("points do not span a two-dimensional polygon")
        self.vertices: tuple[tuple[int, int], ...] = tuple(hull)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(self.vertices)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        v = self.vertices
        return tuple((v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    @cached_property
    def half_planes(self) -> tuple[HalfPlane, ...]:
        """One half-plane per edge, in edge order."""
        return tuple(_edge_half_plane(a, b) for a, b in self.edges)

    @cached_property
    def area2(self) -> int:
        """Twice the Euclidean area."""
        v = self.vertices
        return sum(cross(v[0], v[i], v[i + 1]) for i in range(1, len(v) - 1))

    def contains(self, p: Point) -> bool:
        return all(h.contains(p) for h in self.half_planes)

    def on_boundary(self, p: Point) -> bool:
        return self.contains(p) and any(h.on_line(p) for h in self.half_planes)

    @cached_property
    def lattice_points(self) -> tuple[tuple[int, int], ...]:
        """All lattice points, sorted lexicographically."""
        xs = [v[0] for v in self.vertices]
        out = []
        for x in range(min(xs), max(xs) + 1):
            lo, hi = None, None
            ok = True
            for h in self.half_planes:
                rest = h.c - h.alpha * x
                if h.beta > 0:
                    b = floor(Fraction(rest, h.beta))
                    hi = b if hi is None else min(hi, b)
                elif h.beta < 0:
                    b = ceil(Fraction(rest, h.beta))
                    lo = b if lo is None else max(lo, b)
                elif rest < 0:
                    ok = False
            if ok and lo is not None and hi is not None:
                out.extend((x, y) for y in range(lo, hi + 1))
        return tuple(out)

    @cached_property
    def boundary_points(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.lattice_points if self.on_boundary(p))

    @cached_property
    def interior_points(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.lattice_points if not self.on_boundary(p))

    @property
    def genus(self) -> int:
        return len(self.interior_points)

    @property
    def num_boundary(self) -> int:
        return len(self.boundary_points)

    def edge_points(self, i: int) -> list[tuple[int, int]]:
        """Lattice points of edge ``i`` ordered from its start to its end."""
        a, b = self.edges[i]
        n = lattice_length(a, b)
        dx, dy = (b[0] - a[0]) // n, (b[1] - a[1]) // n
        return [(a[0] + k * dx, a[1] + k * dy) for k in range(n + 1)]

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class InteriorHull:
    """Convex hull of a set of lattice points, tagged by its dimension.

    ``kind`` is one of ``"empty"``, ``"point"``, ``"segment"`` and
    ``"polygon"``.  ``points`` holds the vertices (a single point, the two
    endpoints, or the polygon vertices).
    """

    kind: str
    points: tuple = ()
    polygon: LatticePolygon | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return {"empty": -1, "point": 0, "segment": 1, "polygon": 2}[self.kind]


def hull(points: Iterable[Sequence[int]]) -> Union[LatticePolygon, InteriorHull]:
    """Convex hull, as a polygon when two-dimensional."""
    pts = [(int(p[0]), int(p[1])) for p in points]
    if not pts:
        raise PreconditionError("empty point set")
    h = convex_hull(pts)
    if len(h) == 1:
        return InteriorHull("point", (h[0],))
    if len(h) == 2:
        return InteriorHull("segment", (h[0], h[1]))
    return LatticePolygon(h)


def lattice_points(p: LatticePolygon) -> tuple[list, list]:
    """The boundary and interior lattice points of ``p``."""
    return list(p.boundary_points), list(p.interior_points)


def interior_hull(p: LatticePolygon) -> InteriorHull:
    pts = p.interior_points
    if not pts:
        return InteriorHull("empty")
    h = hull(pts)
    if isinstance(h, LatticePolygon):
        return InteriorHull("polygon", h.vertices, h)
    return h


class Classification(NamedTuple):
    kind: str  # "nonhyperelliptic", "hyperelliptic" or "low_genus"
    genus: int


def classify(p: LatticePolygon) -> Classification:
    g = p.genus
    if g <= 1:
        return Classification("low_genus", g)
    if interior_hull(p).kind == "polygon":
        return Classification("nonhyperelliptic", g)
    return Classification("hyperelliptic", g)


def require_nonhyperelliptic(p: LatticePolygon, what: str) -> LatticePolygon:
    """Return the interior polygon of ``p`` or raise a precondition error."""
    ih = interior_hull(p)
    if ih.kind != "polygon":
        raise PreconditionError(f"{what} requires nonhyperelliptic polygon")
    return ih.polygon


class RationalPolygon:
    """A convex polygon with rational vertices, stored counterclockwise."""

    def __init__(self, points: Iterable[Point]):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        self.vertices = tuple(convex_hull(pts))

    def __repr__(self) -> str:
        return "RationalPolygon([" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + "])"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)

    def to_lattice(self) -> LatticePolygon:
        if not self.is_lattice:
            raise TropmodError(f"{self!r} has non-lattice vertices")
        return LatticePolygon((int(x), int(y)) for x, y in self.vertices)

    def same_set(self, p: LatticePolygon) -> bool:
        return self.vertices == tuple((Fraction(x), Fraction(y)) for x, y in p.vertices)


def _line_intersection(h1: HalfPlane, h2: HalfPlane):
    det = h1.alpha * h2.beta - h1.beta * h2.alpha
    if det == 0:
        return None
    x = Fraction(h1.c * h2.beta - h1.beta * h2.c, det)
    y = Fraction(h1.alpha * h2.c - h1.c * h2.alpha, det)
    return (x, y)


def relaxed_half_planes(p: LatticePolygon) -> tuple[HalfPlane, ...]:
    return tuple(HalfPlane(h.alpha, h.beta, h.c + 1) for h in p.half_planes)


def relax(p: LatticePolygon) -> RationalPolygon:
    """Push every edge of ``p`` outward by lattice distance one."""
    hs = relaxed_half_planes(p)
    corners = []
    for h1, h2 in combinations(hs, 2):
        q = _line_intersection(h1, h2)
        if q is not None and all(h.contains(q) for h in hs):
            corners.append(q)
    return RationalPolygon(corners)


def _unit_step(alpha: int, beta: int) -> tuple[int, int]:
    """Integers ``(x, y)`` with ``alpha*x + beta*y == 1``."""
    old_r, r = alpha, beta
    old_s, s_ = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s_ = s_, old_s - q * s_
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def relaxed_face_points(p: LatticePolygon, i: int) -> list[tuple[int, int]]:
    """Lattice points of the relaxed polygon lying on the relaxed line of edge ``i``.

    The points are ordered along the direction of edge ``i``.
    """
    hs = relaxed_half_planes(p)
    h = hs[i]
    a, b = p.edges[i]
    d = primitive((b[0] - a[0], b[1] - a[1]))
    # a lattice point on the relaxed line, then walk along d
    wx, wy = _unit_step(h.alpha, h.beta)
    base = (a[0] + wx, a[1] + wy)
    # parametrise base + t*d and intersect with the other half-planes
    lo, hi = None, None
    for j, hj in enumerate(hs):
        if j == i:
            continue
        slope = hj.alpha * d[0] + hj.beta * d[1]
        rest = hj.c - hj.value(base)
        if slope > 0:
            t = floor(Fraction(rest, slope))
            hi = t if hi is None else min(hi, t)
        elif slope < 0:
            t = ceil(Fraction(rest, slope))
            lo = t if lo is None else max(lo, t)
        elif rest < 0:
            return []
    if lo is None or hi is None or lo > hi:
        return []
    return [(base[0] + t * d[0], base[1] + t * d[1]) for t in range(lo, hi + 1)]


def is_maximal(p: LatticePolygon) -> bool:
    inner = require_nonhyperelliptic(p, "maximality test")
    return relax(inner).same_set(p)


def maximal_model(p: LatticePolygon) -> LatticePolygon:
    """The unique maximal polygon with the same interior polygon as ``p``."""
    inner = require_nonhyperelliptic(p, "maximal model")
    return relax(inner).to_lattice()


class ColumnVector(NamedTuple):
    v: tuple[int, int]
    base_facet: int


def _is_column_vector(p: LatticePolygon, v, facet: int) -> bool:
    h = p.half_planes[facet]
    for q in p.lattice_points:
        if h.on_line(q):
            continue
        if not p.contains((q[0] + v[0], q[1] + v[1])):
            return False
    return True


def column_vectors(p: LatticePolygon) -> list[ColumnVector]:
    """All pairs ``(v, facet)`` with ``v`` a column vector based at the facet.

    Brute force over the difference box of ``p``.
    """
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    wx, wy = max(xs) - min(xs), max(ys) - min(ys)
    out = []
    for facet in range(len(p.vertices)):
        for dx in range(-wx, wx + 1):
            for dy in range(-wy, wy + 1):
                if (dx, dy) != (0, 0) and _is_column_vector(p, (dx, dy), facet):
                    out.append(ColumnVector((dx, dy), facet))
    return out


def column_count(p: LatticePolygon) -> int:
    """The number c of column vector pairs."""
    return len(column_vectors(p))


def column_count_by_face(p: LatticePolygon) -> dict[int, int]:
    """Per edge of the interior polygon, the predicted column-vector count.

    Keys index the edges of ``interior_hull(p).polygon``.
    """
    inner = require_nonhyperelliptic(p, "column count by face")
    if not relax(inner).same_set(p):
        raise PreconditionError("column count by face requires a maximal polygon")
    out = {}
    for i in range(len(inner.vertices)):
        on_face = len(inner.edge_points(i))
        relaxed = len(relaxed_face_points(inner, i))
        out[i] = max(0, relaxed - 1 - on_face)
    return out


def _width_along(points, u) -> int:
    vals = [u[0] * x + u[1] * y for x, y in points]
    return max(vals) - min(vals)


def lattice_width(p: Union[LatticePolygon, InteriorHull]) -> int:
    """Minimum width over primitive integer directions.

    Any direction ``u`` whose width does not exceed the axis-parallel widths
    satisfies ``|<u, d>| <= w0`` for two independent difference vectors ``d``;
    those finitely many ``u`` are enumerated exactly.
    """
    if isinstance(p, InteriorHull):
        if p.kind != "polygon":
            return 0
        p = p.polygon
    pts = p.vertices
    w0 = min(_width_along(pts, (1, 0)), _width_along(pts, (0, 1)))
    a = pts[0]
    d1 = (pts[1][0] - a[0], pts[1][1] - a[1])
    d2 = (pts[2][0] - a[0], pts[2][1] - a[1])
    det = d1[0] * d2[1] - d1[1] * d2[0]
    best = w0
    for t1 in range(-w0, w0 + 1):
        for t2 in range(-w0, w0 + 1):
            # solve <u, d1> = t1, <u, d2> = t2
            ux = t1 * d2[1] - t2 * d1[1]
            uy = d1[0] * t2 - d2[0] * t1
            if ux % det or uy % det:
                continue
            u = (ux // det, uy // det)
            if u == (0, 0) or gcd(*u) != 1:
                continue
            best = min(best, _width_along(pts, u))
    return best


def equivalent(p: LatticePolygon, q: LatticePolygon) -> bool:
    """Whether an affine unimodular map carries ``p`` onto ``q``."""
    if len(p.vertices) != len(q.vertices) or p.area2 != q.area2:
        return False
    n = len(p.vertices)
    pv = p.vertices
    a0 = pv[0]
    e1 = (pv[1][0] - a0[0], pv[1][1] - a0[1])
    e2 = (pv[-1][0] - a0[0], pv[-1][1] - a0[1])
    det = e1[0] * e2[1] - e1[1] * e2[0]
    target = set(q.vertices)
    for k in range(n):
        for step in (1, -1):
            b0 = q.vertices[k]
            b1 = q.vertices[(k + step) % n]
            b2 = q.vertices[(k - step) % n]
            f1 = (b1[0] - b0[0], b1[1] - b0[1])
            f2 = (b2[0] - b0[0], b2[1] - b0[1])
            # M e1 = f1, M e2 = f2
            m = [
                [f1[0] * e2[1] - f2[0] * e1[1], f2[0] * e1[0] - f1[0] * e2[0]],
                [f1[1] * e2[1] - f2[1] * e1[1], f2[1] * e1[0] - f1[1] * e2[0]],
            ]
            if any(x % det for row in m for x in row):
                continue
            m = [[x // det for x in row] for row in m]
            if abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) != 1:
                continue
            image = {
                (
                    b0[0] + m[0][0] * (v[0] - a0[0]) + m[0][1] * (v[1] - a0[1]),
                    b0[1] + m[1][0] * (v[0] - a0[0]) + m[1][1] * (v[1] - a0[1]),
                )
                for v in pv
            }
            if image == target:
                return True
    return False
