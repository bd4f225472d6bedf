"""Dual tropical curves, the length maps and skeleta."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import _linalg
from .exceptions import PreconditionError
from .lattice import primitive
from .subdivision.constructions import is_pruned
from .subdivision.regular import ConeWitness, certify, height_map
from .subdivision.triangulation import Triangulation, is_unimodular


@dataclass(frozen=True)
class LinearMap:
    """An exact matrix with labelled rows and columns."""

    matrix: tuple
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if len(self.matrix) != len(self.rows) or any(len(r) != len(self.cols) for r in self.matrix):
            raise ValueError("matrix shape does not match its labels")

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def rank(self) -> int:
        return _linalg.rank(self.matrix) if self.matrix else 0

    def nullity(self) -> int:
        return len(self.cols) - self.rank()

    def __call__(self, x) -> list:
        if isinstance(x, Mapping):
            x = [x[c] for c in self.cols]
        return _linalg.matvec(self.matrix, list(x))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise ValueError("labels do not compose")
        if not self.rows:
            return LinearMap((), (), other.cols)
        return LinearMap(tuple(map(tuple, _linalg.matmul(self.matrix, other.matrix))), self.rows, other.cols)


def _edge_pair(t: Triangulation, e) -> tuple:
    a, b = t.points[e[0]], t.points[e[1]]
    return (a, b) if a < b else (b, a)


def _vertex_forms(t: Triangulation, ti: int) -> tuple:
    """The dual vertex of triangle ``ti`` as two rows of coefficients in the heights.

    With heights w and the tropical polynomial min(w_a + <a, X>), the three
    terms of the triangle agree at X.  For a unimodular triangle the 2x2
    system has determinant +-1, so the rows are integral.
    """
    i, j, k = t.triangles[ti]
    pi, pj, pk = (t.points[v] for v in (i, j, k))
    a, b = pj[0] - pi[0], pj[1] - pi[1]
    c, d = pk[0] - pi[0], pk[1] - pi[1]
    det = a * d - b * c
    n = len(t.points)
    # right-hand sides r1 = w_i - w_j, r2 = w_i - w_k
    r1 = [0] * n
    r2 = [0] * n
    r1[i] += 1
    r1[j] -= 1
    r2[i] += 1
    r2[k] -= 1
    x = [Fraction(d * u - b * v, det) for u, v in zip(r1, r2)]
    y = [Fraction(-c * u + a * v, det) for u, v in zip(r1, r2)]
    return x, y


def _edge_direction(t: Triangulation, e) -> tuple:
    """Primitive normal of edge ``e`` pointing towards the third vertex of its first triangle.

    The dual vertex moves in this direction when passing from the first
    triangle to the second, so lengths come out positive on the cone.
    """
    t1 = t.edge_triangles[e][0]
    pa, pb = t.points[e[0]], t.points[e[1]]
    pc = t.points[t.third_vertex(t1, e)]
    nu = primitive((pb[0] - pa[0], pb[1] - pa[1]))
    mu = (-nu[1], nu[0])
    if mu[0] * (pc[0] - pa[0]) + mu[1] * (pc[1] - pa[1]) < 0:
        mu = (-mu[0], -mu[1])
    return mu


def lambda_matrix(t: Triangulation) -> LinearMap:
    """The map from heights to the lattice lengths of the bounded edges of the dual curve."""
    if not is_unimodular(t):
        raise PreconditionError("length map requires a unimodular triangulation")
    forms = [_vertex_forms(t, ti) for ti in range(len(t.triangles))]
    rows = []
    for e in t.interior_edges:
        t1, t2 = t.edge_triangles[e]
        mu = _edge_direction(t, e)
        nn = mu[0] * mu[0] + mu[1] * mu[1]
        (x1, y1), (x2, y2) = forms[t1], forms[t2]
        rows.append(
            tuple((mu[0] * (x2[v] - x1[v]) + mu[1] * (y2[v] - y1[v])) / nn for v in range(len(t.points)))
        )
    return LinearMap(tuple(rows), tuple(_edge_pair(t, e) for e in t.interior_edges), t.points)


@dataclass(frozen=True)
class TropicalCurve:
    """The tropical curve dual to a triangulation for given heights.

    ``vertices[i]`` is the dual vertex of triangle ``i``.  Each bounded edge
    is ``(edge, (t1, t2), length)`` with ``edge`` an interior edge of the
    triangulation; each ray is ``(edge, triangle, direction)``.
    """

    triangulation: Triangulation
    heights: dict
    vertices: tuple
    bounded_edges: tuple
    rays: tuple

    @property
    def lengths(self) -> dict:
        return {e: ln for e, _, ln in self.bounded_edges}


def dual_curve(t: Triangulation, w) -> TropicalCurve:
    """Dual tropical curve of ``t`` for heights ``w`` (a ConeWitness or heights)."""
    if isinstance(w, ConeWitness):
        w = w.heights
    hm = height_map(t.points, w)
    certify(t, hm)
    hv = [hm[p] for p in t.points]
    verts = []
    for ti in range(len(t.triangles)):
        x, y = _vertex_forms(t, ti)
        verts.append((sum(c * h for c, h in zip(x, hv)), sum(c * h for c, h in zip(y, hv))))
    lam = lambda_matrix(t)
    lengths = lam(hv)
    bounded = []
    for e, ln in zip(t.interior_edges, lengths):
        t1, t2 = t.edge_triangles[e]
        mu = _edge_direction(t, e)
        d = (verts[t2][0] - verts[t1][0], verts[t2][1] - verts[t1][1])
        if d != (ln * mu[0], ln * mu[1]) or ln <= 0:
            raise AssertionError("dual edge does not match its length")
        bounded.append((e, (t1, t2), ln))
    rays = []
    for e in t.boundary_edges:
        (ti,) = t.edge_triangles[e]
        pa, pb = t.points[e[0]], t.points[e[1]]
        pc = t.points[t.third_vertex(ti, e)]
        nu = primitive((pb[0] - pa[0], pb[1] - pa[1]))
        mu = (-nu[1], nu[0])
        # the ray leaves the region of the interior monomial
        if mu[0] * (pc[0] - pa[0]) + mu[1] * (pc[1] - pa[1]) < 0:
            mu = (-mu[0], -mu[1])
        rays.append((e, ti, mu))
    return TropicalCurve(t, hm, tuple(verts), tuple(bounded), tuple(rays))


def cycle_closure_residual(c: TropicalCurve, interior_point) -> tuple:
    """Sum of length times direction around the cycle dual to an interior lattice point.

    Each edge ``PQ`` at ``P`` contributes its length times the 90-degree
    rotation of the primitive vector from ``P`` to ``Q``; the result is zero
    for every curve.
    """
    t = c.triangulation
    p = tuple(interior_point)
    if p not in t.index or not t.polygon.contains(p) or t.polygon.on_boundary(p):
        raise PreconditionError(f"{p} is not an interior lattice point")
    v = t.index[p]
    lengths = c.lengths
    sx = sy = Fraction(0)
    for e in t.interior_edges:
        if v not in e:
            continue
        q = t.points[e[1] if e[0] == v else e[0]]
        nx, ny = primitive((q[0] - p[0], q[1] - p[1]))
        sx += lengths[e] * -ny
        sy += lengths[e] * nx
    return (sx, sy)


@dataclass(frozen=True)
class MetricGraph:
    """A finite graph with positive edge lengths; loops and parallel edges allowed.

    Each edge is ``(u, v, length, members)`` where ``members`` are the
    indices of the bounded curve edges it was concatenated from.
    """

    vertices: tuple
    edges: tuple

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + _components(self.vertices, self.edges)

    def degree(self, v) -> int:
        return sum((u == v) + (w == v) for u, w, _, _ in self.edges)

    def is_trivalent(self) -> bool:
        return all(self.degree(v) == 3 for v in self.vertices)


def _components(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, *_ in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices})


def _skeleton_combinatorics(t: Triangulation) -> tuple:
    """Skeleton of the dual graph: prune leaves, then smooth 2-valent vertices.

    Returns ``(vertices, edges)`` with edges ``(u, v, members)``; members are
    indices into ``t.interior_edges`` and edges are ordered by sorted members.
    """
    edges = {}
    for n, e in enumerate(t.interior_edges):
        t1, t2 = t.edge_triangles[e]
        edges[n] = (t1, t2, (n,))
    verts = set(range(len(t.triangles)))

    def incident(v):
        return [k for k, (a, b, _) in edges.items() if a == v or b == v]

    def degree(v):
        return sum((a == v) + (b == v) for a, b, _ in edges.values())

    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            d = degree(v)
            if d == 0:
                verts.discard(v)
                changed = True
            elif d == 1:
                (k,) = incident(v)
                del edges[k]
                verts.discard(v)
                changed = True
    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            inc = incident(v)
            if degree(v) != 2 or len(inc) != 2:
                continue
            k1, k2 = inc
            a1, b1, m1 = edges.pop(k1)
            a2, b2, m2 = edges.pop(k2)
            u = b1 if a1 == v else a1
            w = b2 if a2 == v else a2
            edges[min(k1, k2)] = (u, w, tuple(sorted(m1 + m2)))
            verts.discard(v)
            changed = True
    out = sorted(edges.values(), key=lambda x: x[2])
    return tuple(sorted(verts)), tuple(out)


def skeletonize(c: TropicalCurve) -> MetricGraph:
    t = c.triangulation
    if t.polygon.genus < 2:
        raise PreconditionError("skeleton requires genus at least 2")
    verts, edges = _skeleton_combinatorics(t)
    lengths = [ln for _, _, ln in c.bounded_edges]
    return MetricGraph(verts, tuple((u, v, sum(lengths[m] for m in ms), ms) for u, v, ms in edges))


def kappa_matrix(t: Triangulation) -> LinearMap:
    """0/1 map from bounded edge lengths to skeleton edge lengths."""
    if t.polygon.genus < 2:
        raise PreconditionError("skeleton requires genus at least 2")
    if not is_pruned(t):
        raise PreconditionError("apply prune first")
    _, edges = _skeleton_combinatorics(t)
    n = len(t.interior_edges)
    rows = []
    for _, _, ms in edges:
        row = [0] * n
        for m in ms:
            row[m] = 1
        rows.append(tuple(row))
    return LinearMap(tuple(rows), tuple(ms for _, _, ms in edges), tuple(_edge_pair(t, e) for e in t.interior_edges))


def image_basis(m: LinearMap) -> LinearMap:
    """Columns spanning the image of ``m``, as a map with unlabelled columns."""
    cols = _linalg.column_basis(m.matrix) if m.matrix else []
    mat = tuple(tuple(row[j] for j in cols) for row in m.matrix)
    return LinearMap(mat, m.rows, tuple(m.cols[j] for j in cols))


def moduli_rank(t: Triangulation) -> int:
    """rank of kappa composed with lambda, computed on the pruned triangulation."""
    from .subdivision.constructions import prune

    tp = prune(t)
    return (kappa_matrix(tp) @ lambda_matrix(tp)).rank()
