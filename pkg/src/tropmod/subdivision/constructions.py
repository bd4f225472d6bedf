"""Pruning and the honeycomb and beehive triangulations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from ..exceptions import NotHoneycombError, PreconditionError, TropmodError
from ..lattice import (
    InteriorHull,
    LatticePolygon,
    classify,
    interior_hull,
    is_maximal,
    primitive,
    relaxed_face_points,
)
from ..radial import classify_points, radial_pairs, type_score
from .regular import certify, induce, lift_with_fixed_values, refine_regular, regularity_witness
from .triangulation import Subdivision, Triangulation, is_unimodular


# --- pruning ---------------------------------------------------------------


def _axes(pts: Sequence) -> list:
    n = len(pts)
    out = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a != b:
            out.append((b[1] - a[1], a[0] - b[0]))
    return out


def convex_sets_meet(a: Sequence, b: Sequence) -> bool:
    """Whether the closed convex hulls of two small point lists intersect.

    Separating-axis test over the edge normals of both hulls; exact for
    integer input.  Points and segments are allowed.
    """
    for ax in _axes(a) + _axes(b):
        pa = [ax[0] * x + ax[1] * y for x, y in a]
        pb = [ax[0] * x + ax[1] * y for x, y in b]
        if max(pa) < min(pb) or max(pb) < min(pa):
            return False
    return True


def _hull_points(ih: InteriorHull) -> list:
    return list(ih.points)


def is_pruned(t: Triangulation) -> bool:
    """Every triangle meets the interior hull (so every interior edge does too)."""
    ih = interior_hull(t.polygon)
    hp = _hull_points(ih)
    return all(convex_sets_meet(t.triangle_points(i), hp) for i in range(len(t.triangles)))


def prune(t: Triangulation) -> Triangulation:
    """Drop the triangles that do not meet the interior hull.

    Repeatedly removing a triangle whose removal only deletes edges missing
    the interior hull ends with exactly the triangles that meet it; the
    result triangulates a convex subpolygon with the same interior points.
    """
    if t.polygon.genus < 2:
        raise PreconditionError("pruning requires genus at least 2")
    if not is_unimodular(t):
        raise PreconditionError("pruning requires a unimodular triangulation")
    hp = _hull_points(interior_hull(t.polygon))
    keep = [t.triangle_points(i) for i in range(len(t.triangles)) if convex_sets_meet(t.triangle_points(i), hp)]
    if len(keep) == len(t.triangles):
        return t
    h = None if t.heights is None else dict(zip(t.points, t.heights))
    out = Triangulation.from_point_triangles(keep, h)
    out.check()
    return out


# --- honeycomb --------------------------------------------------------------

HONEYCOMB_DIRECTIONS = {(1, 0), (0, 1), (1, -1), (-1, 0), (0, -1), (-1, 1)}


def is_honeycomb(p: LatticePolygon) -> bool:
    return all(primitive((b[0] - a[0], b[1] - a[1])) in HONEYCOMB_DIRECTIONS for a, b in p.edges)


def honeycomb_heights(p: LatticePolygon) -> dict:
    return {q: Fraction(q[0] * q[0] + q[0] * q[1] + q[1] * q[1]) for q in p.lattice_points}


def honeycomb(p: LatticePolygon) -> Triangulation:
    """Slice ``p`` along the lines x=k, y=k and x+y=k."""
    if not is_honeycomb(p):
        raise NotHoneycombError("polygon has an edge direction outside {(1,0), (0,1), (1,-1)}")
    pts = set(p.lattice_points)
    tris = []
    xs = [q[0] for q in pts]
    ys = [q[1] for q in pts]
    # anchor cells may lie outside p when an edge has direction (1,-1)
    for i, j in product(range(min(xs) - 1, max(xs) + 1), range(min(ys) - 1, max(ys) + 1)):
        low = ((i, j), (i + 1, j), (i, j + 1))
        high = ((i + 1, j), (i + 1, j + 1), (i, j + 1))
        for tri in (low, high):
            if all(v in pts for v in tri):
                tris.append(tri)
    w = honeycomb_heights(p)
    t = Triangulation.from_point_triangles(tris, w)
    t.check()
    certify(t, w)
    return t


# --- width-one cells --------------------------------------------------------


def composition_triangles(bottom: Sequence, top: Sequence, parts: Sequence[int]) -> list:
    """Triangulation of a lattice-width-one cell.

    ``bottom`` and ``top`` are the lattice points of the two parallel lines in
    the same direction; ``parts[j]`` is the number of extra top points joined
    to ``bottom[j]``.
    """
    a, b = len(bottom) - 1, len(top) - 1
    if len(parts) != a + 1 or sum(parts) != b or min(parts) < 0:
        raise PreconditionError("composition does not match the cell")
    tris = []
    k = 0
    for j in range(a + 1):
        for _ in range(parts[j]):
            tris.append((bottom[j], top[k], top[k + 1]))
            k += 1
        if j < a:
            tris.append((bottom[j], bottom[j + 1], top[k]))
    return tris


def _best_parts(a: int, b: int, left: bool, right: bool) -> list | None:
    """A composition of ``b`` into ``a + 1`` parts with prescribed end positivity.

    Among those, one with the most positive interior parts.
    """
    if a == 0:
        return [b] if left == right == (b > 0) else None
    parts = [0] * (a + 1)
    parts[0], parts[a] = int(left), int(right)
    spare = b - sum(parts)
    if spare < 0:
        return None
    for j in range(1, a):
        if spare == 0:
            break
        parts[j] = 1
        spare -= 1
    pos = [j for j in range(a + 1) if parts[j] > 0]
    if spare and not pos:
        return None
    if spare:
        parts[pos[-1]] += spare
    return parts


def random_parts(a: int, b: int, rng: random.Random) -> list:
    """A uniformly random composition of ``b`` into ``a + 1`` nonnegative parts."""
    cuts = sorted(rng.sample(range(a + b), a))
    parts = []
    prev = -1
    for c in cuts + [a + b]:
        parts.append(c - prev - 1)
        prev = c
    return parts


@dataclass(frozen=True)
class CellFrame:
    """The coarse subdivision a beehive triangulation refines.

    ``facet_cells[i]`` is the cell containing edge ``i`` of the interior
    polygon; ``bottom[i]`` and ``top[i]`` are its lattice points on the edge
    line and on the relaxed line, in the direction of the edge.  ``order`` is
    the cyclic order in which cell heights can be glued, or None when no cell
    meets its predecessor in at most one point.
    """

    polygon: LatticePolygon
    inner: LatticePolygon
    heights: dict
    subdivision: Subdivision
    facet_cells: tuple
    bottom: tuple
    top: tuple
    order: tuple | None


def _boundary_one_heights(p: LatticePolygon) -> dict:
    bd = set(p.boundary_points)
    return {q: Fraction(1 if q in bd else 0) for q in p.lattice_points}


def cell_frame(p: LatticePolygon) -> CellFrame:
    """Build the coarse subdivision: heights 1 on the boundary and 0 inside.

    For a maximal polygon with an edge carrying at least three lattice points,
    the relative interior points of the lexicographically first such edge get
    height 1/2 instead, which splits off two unimodular corner triangles.
    """
    cls = classify(p)
    if cls.kind != "nonhyperelliptic":
        raise PreconditionError("beehive requires a nonhyperelliptic polygon of genus at least 2")
    inner = interior_hull(p).polygon
    n = len(inner.vertices)
    w = _boundary_one_heights(p)
    if is_maximal(p):
        faces = [(i, relaxed_face_points(inner, i)) for i in range(n)]
        long = [(sorted((f[0], f[-1])), i, f) for i, f in faces if len(f) >= 3]
        if long:
            _, special, f = min(long)
            for q in f[1:-1]:
                w[q] = Fraction(1, 2)
    sub = induce(p, w)
    inner_pts = set(inner.lattice_points)
    facet_cells = []
    bottoms, tops = [], []
    for i in range(n):
        a, b = inner.edges[i]
        h = inner.half_planes[i]
        idx = [
            c
            for c, m in enumerate(sub.marked)
            if a in m and b in m and not set(m) <= inner_pts
        ]
        if len(idx) != 1:
            raise TropmodError(f"no unique cell along interior edge {i}")
        c = idx[0]
        d = primitive((b[0] - a[0], b[1] - a[1]))
        key = lambda q: q[0] * d[0] + q[1] * d[1]
        bottom = sorted((q for q in sub.marked[c] if h.on_line(q)), key=key)
        top = sorted((q for q in sub.marked[c] if h.value(q) == h.c + 1), key=key)
        if len(bottom) + len(top) != len(sub.marked[c]) or not top:
            raise TropmodError(f"cell along interior edge {i} does not have lattice width one")
        facet_cells.append(c)
        bottoms.append(tuple(bottom))
        tops.append(tuple(top))
    order = None
    for s in range(n):
        prev = set(sub.marked[facet_cells[s - 1]])
        if len(prev & set(sub.marked[facet_cells[s]])) <= 1:
            order = tuple((s + k) % n for k in range(n))
            break
    return CellFrame(p, inner, w, sub, tuple(facet_cells), tuple(bottoms), tuple(tops), order)


def _fixed_triangles(frame: CellFrame) -> list:
    """Cells of the coarse subdivision that are neither the interior polygon nor a facet cell."""
    inner_pts = set(frame.inner.lattice_points)
    skip = set(frame.facet_cells)
    out = []
    for c, m in enumerate(frame.subdivision.marked):
        if c in skip or set(m) <= inner_pts:
            continue
        if len(m) != 3 or frame.subdivision.cells[c].area2 != 1:
            raise TropmodError("unexpected non-unimodular corner cell")
        out.append(tuple(m))
    return out


def refine_cells(frame: CellFrame, choices: Mapping[int, Sequence]) -> Triangulation:
    """A regular unimodular triangulation restricting to the chosen cell triangulations.

    ``choices[i]`` lists the triangles (as point triples) chosen for the cell
    along interior edge ``i``; every facet cell must be given.  Heights are
    chosen per cell, glued in the frame's order with affine corrections that
    agree on shared points, and added as a small perturbation to the frame
    heights.
    """
    if frame.order is None:
        raise PreconditionError("cells cannot be glued in a chain; no cell meets its predecessor in one point")
    p = frame.polygon
    placed: dict = {}
    cell_tris = {}
    for i in frame.order:
        tri = Triangulation.from_point_triangles(choices[i])
        if set(tri.points) != set(frame.bottom[i]) | set(frame.top[i]):
            raise PreconditionError(f"choice for cell {i} does not use exactly the cell's lattice points")
        tri.check()
        wit = regularity_witness(tri)
        if wit is None:
            raise TropmodError(f"cell triangulation {i} is not regular")
        anchors = {q: placed[q] for q in tri.points if q in placed}
        hts = lift_with_fixed_values(tri, anchors, heights=wit.heights)
        placed.update(hts)
        cell_tris[i] = {tuple(sorted(tri.triangle_points(k))) for k in range(len(tri.triangles))}
    big = max((abs(v) for v in placed.values()), default=Fraction(0)) + 1
    w1 = {q: placed.get(q, -big) for q in p.lattice_points}
    delta = Fraction(1)
    for _ in range(256):
        w = {q: frame.heights[q] + delta * w1[q] for q in p.lattice_points}
        sub = induce(p, w)
        if _restricts(sub, frame, cell_tris):
            t = refine_regular(sub, w)
            if _restricts_tri(t, frame, cell_tris):
                return t
        delta /= 2
    raise TropmodError("failed to glue cell heights")


def _cell_point_sets(frame: CellFrame) -> dict:
    return {i: set(frame.bottom[i]) | set(frame.top[i]) for i in range(len(frame.facet_cells))}


def _restricts(sub: Subdivision, frame: CellFrame, cell_tris: dict) -> bool:
    if not all(frame.subdivision.cell_containing(m) is not None for m in sub.marked):
        return False
    sets = _cell_point_sets(frame)
    for i, want in cell_tris.items():
        got = {m for m in sub.marked if set(m) <= sets[i]}
        if got != want:
            return False
    return True


def _restricts_tri(t: Triangulation, frame: CellFrame, cell_tris: dict) -> bool:
    sets = _cell_point_sets(frame)
    tris = {tuple(sorted(t.triangle_points(k))) for k in range(len(t.triangles))}
    return all({x for x in tris if set(x) <= sets[i]} == want for i, want in cell_tris.items())


def _cell_options(frame: CellFrame, i: int) -> dict:
    a = len(frame.bottom[i]) - 1
    b = len(frame.top[i]) - 1
    out = {}
    for left, right in product((False, True), repeat=2):
        parts = _best_parts(a, b, left, right)
        if parts is None:
            continue
        if (parts[0] > 0) != left or (parts[-1] > 0) != right:
            continue
        out[(left, right)] = composition_triangles(frame.bottom[i], frame.top[i], parts)
    return out


def _edges_of(tris) -> set:
    out = set()
    for x, y, z in tris:
        out.update({(x, y), (y, z), (z, x)})
    return out


def beehive_choices(frame: CellFrame) -> dict:
    """Per-cell triangulations maximising b2 + 2*b3 over the frame.

    Each facet cell offers one candidate per positivity pattern of the fans
    at its two ends; every combination is scored exactly from its radial
    edges.
    """
    n = len(frame.facet_cells)
    opts = [_cell_options(frame, i) for i in range(n)]
    fixed = _edges_of(_fixed_triangles(frame))
    outer = set(frame.polygon.boundary_points)
    keys = [sorted(o) for o in opts]
    best = None
    for combo in product(*keys):
        edges = set(fixed)
        for i, k in enumerate(combo):
            edges |= _edges_of(opts[i][k])
        score = type_score(classify_points(radial_pairs(edges, frame.inner, outer), frame.inner))
        if best is None or score > best[0]:
            best = (score, combo)
    return {i: opts[i][k] for i, k in enumerate(best[1])}


def beehive(p: LatticePolygon) -> Triangulation:
    """A regular unimodular beehive triangulation of a nonhyperelliptic polygon."""
    if p.genus < 2:
        raise PreconditionError("beehive requires a nonhyperelliptic polygon of genus at least 2")
    frame = cell_frame(p)
    if frame.order is None:
        # every cell choice is equally good here; any regular refinement will do
        t = refine_regular(frame.subdivision, frame.heights)
    else:
        t = refine_cells(frame, beehive_choices(frame))
    certify(t, t.heights)
    return t
