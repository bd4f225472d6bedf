"""Exhaustive enumeration of unimodular triangulations.

The search repeatedly takes the smallest edge that still needs a triangle on
its open side and branches over every unimodular triangle that can be placed
there.  In any completion that side is covered by exactly one triangle, so
distinct branches never produce the same triangulation.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator

from ..exceptions import PreconditionError
from ..lattice import LatticePolygon, cross
from .triangulation import Triangulation

MAX_POINTS_WITHOUT_CAP = 18


def _segments_cross(a, b, c, d) -> bool:
    """Proper crossing of segments ``ab`` and ``cd`` (shared endpoints excluded)."""
    if len({a, b, c, d}) < 4:
        return False
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    return d1 * d2 < 0 and d3 * d4 < 0


class _Search:
    def __init__(self, p: LatticePolygon):
        self.poly = p
        self.pts = list(p.lattice_points)
        n = len(self.pts)
        self.n = n
        # primitive segments usable as triangle edges
        self.eid: dict = {}
        segs = []
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.pts[i], self.pts[j]
                if _gcd2(b[0] - a[0], b[1] - a[1]) == 1:
                    self.eid[(i, j)] = len(segs)
                    segs.append((i, j))
        self.segs = segs
        self.crossing = [[] for _ in segs]
        for x in range(len(segs)):
            a, b = (self.pts[v] for v in segs[x])
            for y in range(x + 1, len(segs)):
                c, d = (self.pts[v] for v in segs[y])
                if _segments_cross(a, b, c, d):
                    self.crossing[x].append(y)
                    self.crossing[y].append(x)
        # for a directed edge (i, j), third vertices k making a unimodular ccw triangle
        self.apex = {}
        for i, j in segs:
            for u, v in ((i, j), (j, i)):
                pu, pv = self.pts[u], self.pts[v]
                self.apex[(u, v)] = [k for k in range(n) if cross(pu, pv, self.pts[k]) == 1]
        self.on_boundary = set()
        for i, j in segs:
            a, b = self.pts[i], self.pts[j]
            if any(h.on_line(a) and h.on_line(b) for h in p.half_planes):
                self.on_boundary.add(self.eid[(i, j)])

    def edge(self, u: int, v: int) -> int:
        return self.eid[(u, v) if u < v else (v, u)]

    def start(self) -> tuple[int, int]:
        # the smallest boundary edge, directed so the polygon lies on its left
        i, j = self.segs[min(self.on_boundary)]
        pi, pj = self.pts[i], self.pts[j]
        return (i, j) if any(cross(pi, pj, q) > 0 for q in self.pts) else (j, i)


def _gcd2(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _check_size(p: LatticePolygon, cap: int | None) -> None:
    if cap is None and len(p.lattice_points) > MAX_POINTS_WITHOUT_CAP:
        raise PreconditionError("instance too large; set a cap")


def enumerate_unimodular(p: LatticePolygon, cap: int | None = None) -> Iterator[Triangulation]:
    """Yield every unimodular triangulation of ``p`` exactly once.

    Stops after ``cap`` triangulations when a cap is given.  Polygons with
    more than 18 lattice points require a cap.
    """
    _check_size(p, cap)
    yield from _enumerate(p, cap, None)


def first_branches(p: LatticePolygon) -> list[int]:
    """Apex choices at the root of the search; used to split work."""
    s = _Search(p)
    u, v = s.start()
    return list(s.apex[(u, v)])


def enumerate_branch(p: LatticePolygon, branch: int, cap: int | None = None) -> Iterator[Triangulation]:
    """The part of the search below one root apex choice."""
    _check_size(p, cap)
    yield from _enumerate(p, cap, branch)


def _enumerate(p: LatticePolygon, cap: int | None, branch: int | None) -> Iterator[Triangulation]:
    s = _Search(p)
    blocked = [0] * len(s.segs)
    used = [False] * len(s.segs)
    # directed edges (a, b) whose left side is already covered by a triangle
    filled: set = set()
    triangles: list[tuple] = []
    # directed edges (a, b) that still need a triangle on their left
    open_edges: set = {s.start()}
    seen: set = set()
    count = 0

    def rec():
        nonlocal count
        if not open_edges:
            t = Triangulation.from_triangles(s.pts, triangles)
            key = t.key()
            if key not in seen:
                seen.add(key)
                count += 1
                yield t
            return
        u, v = min(open_edges)
        apexes = s.apex[(u, v)]
        if branch is not None and not triangles:
            apexes = [k for k in apexes if k == branch]
        for k in apexes:
            e1, e2 = s.edge(v, k), s.edge(k, u)
            if blocked[e1] or blocked[e2] or (v, k) in filled or (k, u) in filled:
                continue
            new_edges = [e for e in (e1, e2) if not used[e]]
            for e in new_edges:
                used[e] = True
                for f in s.crossing[e]:
                    blocked[f] += 1
            sides = ((u, v), (v, k), (k, u))
            filled.update(sides)
            triangles.append((u, v, k))
            changed = [("del", (u, v))]
            open_edges.discard((u, v))
            for a, b in sides[1:]:
                if (a, b) in open_edges:
                    open_edges.discard((a, b))
                    changed.append(("del", (a, b)))
                elif s.edge(a, b) not in s.on_boundary:
                    open_edges.add((b, a))
                    changed.append(("add", (b, a)))
            yield from rec()
            for op, d in reversed(changed):
                if op == "del":
                    open_edges.add(d)
                else:
                    open_edges.discard(d)
            triangles.pop()
            filled.difference_update(sides)
            for e in new_edges:
                used[e] = False
                for f in s.crossing[e]:
                    blocked[f] -= 1
            if cap is not None and count >= cap:
                return

    for t in rec():
        yield t
        if cap is not None and count >= cap:
            return


def flip_graph_triangulations(t: Triangulation, limit: int | None = None) -> set:
    """All unimodular triangulations reachable from ``t`` by edge flips, as keys.

    An interior edge can be flipped when its two triangles form a strictly
    convex quadrilateral; for unimodular triangles the new pair is again
    unimodular.  Used as an independent check on the enumerator.
    """
    start = frozenset(tuple(sorted(t.triangle_points(i))) for i in range(len(t.triangles)))
    seen = {start}
    queue = deque([start])
    keys = set()
    while queue:
        tris = queue.popleft()
        cur = Triangulation.from_point_triangles(tris)
        keys.add(cur.key())
        if limit is not None and len(keys) >= limit:
            break
        for e in cur.interior_edges:
            t1, t2 = cur.edge_triangles[e]
            a, b = (cur.points[x] for x in e)
            c = cur.points[cur.third_vertex(t1, e)]
            d = cur.points[cur.third_vertex(t2, e)]
            if not _segments_cross(a, b, c, d):
                continue
            new = set(tris)
            new.discard(tuple(sorted((a, b, c))))
            new.discard(tuple(sorted((a, b, d))))
            new.add(tuple(sorted((a, c, d))))
            new.add(tuple(sorted((b, c, d))))
            fz = frozenset(new)
            if fz not in seen:
                seen.add(fz)
                queue.append(fz)
    return keys
