"""Triangulations and polyhedral subdivisions of lattice polygons."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..exceptions import PreconditionError
from ..lattice import LatticePolygon, convex_hull, cross

Edge = tuple  # sorted pair of point indices


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of the convex hull of ``points``.

    ``triangles`` are index triples in counterclockwise order.  ``heights``,
    when present, is a height vector aligned with ``points`` that induces the
    triangulation; it is ignored by equality.
    """

    points: tuple
    triangles: tuple
    heights: tuple | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_triangles(
        cls,
        points: Sequence[Sequence[int]],
        triangles: Iterable[Sequence[int]],
        heights: Sequence | None = None,
    ) -> "Triangulation":
        """Normalise orientation and order; the point order is kept."""
        pts = tuple((int(p[0]), int(p[1])) for p in points)
        tris = []
        for tri in triangles:
            i, j, k = (int(x) for x in tri)
            s = cross(pts[i], pts[j], pts[k])
            if s == 0:
                raise PreconditionError(f"degenerate triangle {(i, j, k)}")
            if s < 0:
                j, k = k, j
            # rotate so the smallest index comes first
            r = min(range(3), key=lambda m: (i, j, k)[m])
            tri3 = (i, j, k)
            tris.append(tri3[r:] + tri3[:r])
        h = None if heights is None else tuple(Fraction(x) for x in heights)
        return cls(pts, tuple(sorted(tris)), h)

    @classmethod
    def from_point_triangles(cls, triangles: Iterable[Sequence], heights: Mapping | None = None):
        """Build from triangles given by their vertex coordinates."""
        tris = [tuple(tuple(v) for v in t) for t in triangles]
        pts = sorted({v for t in tris for v in t})
        index = {p: i for i, p in enumerate(pts)}
        h = None if heights is None else [heights[p] for p in pts]
        return cls.from_triangles(pts, [[index[v] for v in t] for t in tris], h)

    def with_heights(self, heights: Sequence | Mapping | None) -> "Triangulation":
        if isinstance(heights, Mapping):
            heights = [heights[p] for p in self.points]
        h = None if heights is None else tuple(Fraction(x) for x in heights)
        return Triangulation(self.points, self.triangles, h)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def polygon(self) -> LatticePolygon:
        return LatticePolygon(self.points)

    @cached_property
    def edge_triangles(self) -> dict:
        """Map from each edge (sorted index pair) to its adjacent triangles."""
        out: dict = {}
        for ti, (i, j, k) in enumerate(self.triangles):
            for a, b in ((i, j), (j, k), (k, i)):
                out.setdefault((min(a, b), max(a, b)), []).append(ti)
        return out

    @cached_property
    def edges(self) -> tuple:
        return tuple(sorted(self.edge_triangles))

    @cached_property
    def interior_edges(self) -> tuple:
        """Edges shared by two triangles, sorted; these index the set E."""
        return tuple(e for e in self.edges if len(self.edge_triangles[e]) == 2)

    @cached_property
    def boundary_edges(self) -> tuple:
        return tuple(e for e in self.edges if len(self.edge_triangles[e]) == 1)

    @cached_property
    def edge_index(self) -> dict:
        return {e: n for n, e in enumerate(self.interior_edges)}

    def triangle_points(self, ti: int) -> tuple:
        return tuple(self.points[i] for i in self.triangles[ti])

    def area2(self) -> int:
        return sum(cross(*self.triangle_points(t)) for t in range(len(self.triangles)))

    def third_vertex(self, ti: int, edge: Edge) -> int:
        return next(v for v in self.triangles[ti] if v not in edge)

    def key(self) -> frozenset:
        """Canonical identity: the set of interior edges as point pairs."""
        return frozenset(
            (self.points[a], self.points[b]) if self.points[a] < self.points[b] else (self.points[b], self.points[a])
            for a, b in self.interior_edges
        )

    def restrict(self, points: Iterable) -> "Triangulation":
        """Sub-triangulation formed by the triangles whose vertices all lie in ``points``."""
        keep = set(points)
        tris = [self.triangle_points(t) for t in range(len(self.triangles)) if set(self.triangle_points(t)) <= keep]
        h = None if self.heights is None else dict(zip(self.points, self.heights))
        return Triangulation.from_point_triangles(tris, h)

    def check(self) -> None:
        """Raise unless the triangles form a triangulation of the hull of the points."""
        if not self.triangles:
            raise PreconditionError("triangulation has no triangles")
        used = {v for t in self.triangles for v in t}
        if used != set(range(len(self.points))):
            raise PreconditionError("triangulation has unused points")
        for e, ts in self.edge_triangles.items():
            if len(ts) > 2:
                raise PreconditionError(f"edge {e} lies in more than two triangles")
            if len(ts) == 2:
                a, b = e
                c1 = self.third_vertex(ts[0], e)
                c2 = self.third_vertex(ts[1], e)
                pa, pb = self.points[a], self.points[b]
                if cross(pa, pb, self.points[c1]) * cross(pa, pb, self.points[c2]) >= 0:
                    raise PreconditionError(f"triangles overlap along edge {e}")
        poly = self.polygon
        for a, b in self.boundary_edges:
            pa, pb = self.points[a], self.points[b]
            if not any(h.on_line(pa) and h.on_line(pb) for h in poly.half_planes):
                raise PreconditionError(f"boundary edge {(pa, pb)} is not on the hull boundary")
        if self.area2() != poly.area2:
            raise PreconditionError("triangle areas do not add up to the polygon area")


def is_unimodular(t: Triangulation) -> bool:
    """All triangles have area 1/2 and every lattice point of the hull is a vertex."""
    if any(cross(*t.triangle_points(i)) != 1 for i in range(len(t.triangles))):
        return False
    return set(t.polygon.lattice_points) == set(t.points)


@dataclass(frozen=True)
class Subdivision:
    """A polyhedral subdivision of ``parent``.

    ``marked[i]`` lists the lattice points that lie on the lifted face of
    cell ``i``; points strictly above the lower hull appear in no cell.
    """

    parent: LatticePolygon
    cells: tuple
    marked: tuple
    heights: dict | None = field(default=None, compare=False, repr=False)

    def is_triangulation(self) -> bool:
        return all(len(c.vertices) == 3 and len(m) == 3 for c, m in zip(self.cells, self.marked))

    def is_unimodular_triangulation(self) -> bool:
        return all(len(m) == 3 and c.area2 == 1 for c, m in zip(self.cells, self.marked)) and set(
            p for m in self.marked for p in m
        ) == set(self.parent.lattice_points)

    def to_triangulation(self, heights: Mapping | None = None) -> Triangulation:
        if not self.is_triangulation():
            raise PreconditionError("subdivision has non-triangular cells")
        return Triangulation.from_point_triangles([c.vertices for c in self.cells], heights)

    def cell_containing(self, pts: Iterable) -> int | None:
        """Index of a cell whose polygon contains all given points."""
        pts = list(pts)
        for i, c in enumerate(self.cells):
            if all(c.contains(p) for p in pts):
                return i
        return None

    def refined_by(self, t: Triangulation) -> bool:
        """Whether every triangle of ``t`` lies inside one cell."""
        return all(self.cell_containing(t.triangle_points(i)) is not None for i in range(len(t.triangles)))


def ccw_points(points: Iterable) -> list:
    """Vertices of the hull of ``points`` in counterclockwise order."""
    return convex_hull(points)
