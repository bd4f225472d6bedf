"""Regular subdivisions: lower hulls, secondary-cone inequalities and witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Mapping, Sequence

from .. import _linalg, _lp
from ..exceptions import NotRegularError, PreconditionError, TropmodError
from ..lattice import LatticePolygon, cross
from .triangulation import Subdivision, Triangulation, is_unimodular

HeightFunction = Mapping  # point -> Fraction


def height_map(points: Sequence, w) -> dict:
    """Coerce ``w`` (mapping or sequence aligned with ``points``) to a dict."""
    if isinstance(w, Mapping):
        missing = [p for p in points if p not in w]
        if missing:
            raise PreconditionError(f"height function is not defined at {missing[0]}")
        return {p: Fraction(w[p]) for p in points}
    w = list(w)
    if len(w) != len(points):
        raise PreconditionError("height vector length does not match the number of lattice points")
    return {p: Fraction(x) for p, x in zip(points, w)}


def _orient3(a, b, c, d) -> int:
    """Sign-carrying 3x3 determinant; positive when ``d`` lies above the plane of ``a, b, c``.

    The points are lifted ``(x, y, z)`` triples and ``a, b, c`` must be
    counterclockwise in the plane.
    """
    bx, by, bz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    cx, cy, cz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    dx, dy, dz = d[0] - a[0], d[1] - a[1], d[2] - a[2]
    return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx)


def induce(p: LatticePolygon, w) -> Subdivision:
    """Project the lower faces of the lifted lattice points of ``p``."""
    pts = list(p.lattice_points)
    hm = height_map(pts, w)
    den = lcm(*(v.denominator for v in hm.values()))
    lifted = [(x, y, int(hm[(x, y)] * den)) for x, y in pts]
    n = len(lifted)
    faces: list[frozenset] = []
    for i, j, k in combinations(range(n), 3):
        if any(i in f and j in f and k in f for f in faces):
            continue
        s = cross(lifted[i], lifted[j], lifted[k])
        if s == 0:
            continue
        a, b, c = (lifted[i], lifted[j], lifted[k]) if s > 0 else (lifted[i], lifted[k], lifted[j])
        on = []
        for m in range(n):
            d = _orient3(a, b, c, lifted[m])
            if d < 0:
                break
            if d == 0:
                on.append(m)
        else:
            faces.append(frozenset(on))
    cells = []
    for f in faces:
        marked = tuple(sorted(pts[m] for m in f))
        cells.append((LatticePolygon(marked), marked))
    cells.sort(key=lambda cm: cm[0].vertices)
    return Subdivision(p, tuple(c for c, _ in cells), tuple(m for _, m in cells), heights=hm)


def fold_rows(t: Triangulation) -> list[list[int]]:
    """One integer row per interior edge; the row dotted with heights is the fold determinant.

    For the edge shared by triangles ``(a, b, c)`` (counterclockwise) and
    ``(b, a, d)`` the row evaluates the 4x4 determinant whose sign says
    whether ``d`` is lifted above the plane through ``a, b, c``.
    """
    rows = []
    n = len(t.points)
    for e in t.interior_edges:
        t1, t2 = t.edge_triangles[e]
        i, j, k = t.triangles[t1]
        m = t.third_vertex(t2, e)
        pi, pj, pk, pm = (t.points[v] for v in (i, j, k, m))
        dj = (pj[0] - pi[0], pj[1] - pi[1])
        dk = (pk[0] - pi[0], pk[1] - pi[1])
        dm = (pm[0] - pi[0], pm[1] - pi[1])
        c1 = dk[0] * dm[1] - dk[1] * dm[0]
        c2 = -(dj[0] * dm[1] - dj[1] * dm[0])
        c3 = dj[0] * dk[1] - dj[1] * dk[0]
        row = [0] * n
        row[j] += c1
        row[k] += c2
        row[m] += c3
        row[i] -= c1 + c2 + c3
        rows.append(row)
    return rows


def fold_values(t: Triangulation, heights) -> list[Fraction]:
    hv = [height_map(t.points, heights)[p] for p in t.points]
    return [sum(c * h for c, h in zip(row, hv) if c) for row in fold_rows(t)]


@dataclass(frozen=True)
class ConeWitness:
    """Heights in the open secondary cone together with their fold determinants."""

    heights: dict
    margins: tuple

    def vector(self, points: Sequence) -> list[Fraction]:
        return [self.heights[p] for p in points]


def certify(t: Triangulation, heights) -> ConeWitness:
    """Check that ``heights`` lie in the open secondary cone of ``t``."""
    hm = height_map(t.points, heights)
    margins = fold_values(t, hm)
    if any(m <= 0 for m in margins):
        raise NotRegularError("heights not in open secondary cone")
    return ConeWitness(hm, tuple(margins))


def _require_unimodular(t: Triangulation) -> None:
    if not is_unimodular(t):
        raise PreconditionError("determinant criterion requires unimodular triangulation")


def _gauged_system(t: Triangulation):
    rows = fold_rows(t)
    fixed = set(t.triangles[0])
    free = [v for v in range(len(t.points)) if v not in fixed]
    return [[row[v] for v in free] for row in rows], free


def regularity_witness(t: Triangulation) -> ConeWitness | None:
    """Heights with every fold determinant at least one, or None if none exist.

    The system is gauge-fixed by setting the heights of the first triangle to
    zero (adding an affine function changes no determinant) and solved by an
    exact simplex.
    """
    _require_unimodular(t)
    if not t.interior_edges:
        return ConeWitness({p: Fraction(0) for p in t.points}, ())
    a, free = _gauged_system(t)
    x = _lp.feasible_point(a, [1] * len(a))
    if x is None:
        return None
    h = [Fraction(0)] * len(t.points)
    for v, val in zip(free, x):
        h[v] = val
    return certify(t, h)


def is_regular(t: Triangulation) -> bool:
    return regularity_witness(t) is not None


def is_regular_fm(t: Triangulation) -> bool:
    """Regularity decided by Fourier-Motzkin elimination; for cross-checks only."""
    _require_unimodular(t)
    if not t.interior_edges:
        return True
    a, _ = _gauged_system(t)
    return _lp.fm_feasible(a, [1] * len(a))


def _tiebreak(points: Sequence) -> dict:
    # strictly convex with distinct lower-order terms; exact integers
    n = len(points)
    scale = 4 ** n
    return {p: scale * (p[0] * p[0] + p[1] * p[1]) + 2**i for i, p in enumerate(sorted(points))}


def refine_regular(s: Subdivision, base=None, max_halvings: int = 256) -> Triangulation:
    """A regular unimodular triangulation refining ``s``.

    Heights ``base + delta*q`` with a strictly convex ``q`` are tried with
    ``delta`` halved until the induced subdivision is a unimodular
    triangulation whose triangles all lie inside cells of ``s``.
    """
    p = s.parent
    pts = list(p.lattice_points)
    if base is None:
        if s.heights is None:
            raise PreconditionError("subdivision carries no inducing heights")
        base = s.heights
    bm = height_map(pts, base)
    unmarked = set(pts) - {q for m in s.marked for q in m}
    if unmarked:
        raise PreconditionError(f"lattice point {min(unmarked)} lies above the lower hull; no unimodular refinement")
    q = _tiebreak(pts)
    top = max(q.values())
    q = {x: Fraction(v, top) for x, v in q.items()}
    delta = Fraction(1)
    for _ in range(max_halvings):
        w = {x: bm[x] + delta * q[x] for x in pts}
        sub = induce(p, w)
        if sub.is_unimodular_triangulation():
            t = sub.to_triangulation(w)
            if s.refined_by(t):
                certify(t, w)
                return t
        delta /= 2
    raise TropmodError("failed to find a regular unimodular refinement")


def lift_with_fixed_values(s, anchors: Mapping, heights=None) -> dict:
    """Heights inducing ``s`` that take prescribed values at up to three points.

    ``s`` is a Subdivision (its inducing heights are used) or a unimodular
    Triangulation (a witness is computed if none is given).  The anchors must
    be affinely independent.
    """
    if heights is None:
        if isinstance(s, Triangulation):
            heights = s.heights
            if heights is None:
                wit = regularity_witness(s)
                if wit is None:
                    raise PreconditionError("triangulation is not regular")
                heights = wit.heights
        else:
            heights = s.heights
    points = s.points if isinstance(s, Triangulation) else s.parent.lattice_points
    hm = height_map(points, heights)
    anchors = dict(anchors)
    if len(anchors) > 3:
        raise PreconditionError("at most three anchor points can be prescribed")
    rows = [[p[0], p[1], 1] for p in anchors]
    if rows and _linalg.rank(rows) < len(rows):
        raise PreconditionError("anchors are affinely dependent")
    for p in anchors:
        if p not in hm:
            raise PreconditionError(f"anchor {p} is not a lattice point of the subdivision")
    if not rows:
        return hm
    coef = _linalg.solve(rows, [Fraction(v) - hm[p] for p, v in anchors.items()])
    a, b, c = coef
    return {p: h + a * p[0] + b * p[1] + c for p, h in hm.items()}
