"""Radial edges and the Type 1/2/3 classification of boundary points of the interior polygon."""

from __future__ import annotations

from typing import Iterable

from .lattice import LatticePolygon, cross


def leaves_immediately(poly: LatticePolygon, p, q) -> bool:
    """Whether the segment from ``p`` (on the boundary of ``poly``) towards ``q`` meets ``poly`` only at ``p``."""
    d = (q[0] - p[0], q[1] - p[1])
    return any(h.on_line(p) and h.alpha * d[0] + h.beta * d[1] > 0 for h in poly.half_planes)


def radial_pairs(edges: Iterable, inner: LatticePolygon, outer_boundary: set) -> list[tuple]:
    """Pairs ``(P, Q)`` for the radial edges among ``edges``.

    ``edges`` are point pairs; ``P`` lies on the boundary of ``inner`` and
    ``Q`` in ``outer_boundary``.
    """
    ring = set(inner.boundary_points)
    out = []
    for a, b in edges:
        for p, q in ((a, b), (b, a)):
            if p in ring and q in outer_boundary and leaves_immediately(inner, p, q):
                out.append((p, q))
    return sorted(set(out))


def point_type(endpoints: list) -> int:
    """1, 2 or 3 for a fan of radial endpoints; 0 when the point has no radial edge."""
    endpoints = sorted(set(endpoints))
    m = len(endpoints)
    if m == 0:
        return 0
    if m == 1:
        return 1
    a, b = endpoints[0], endpoints[1]
    if all(cross(a, b, c) == 0 for c in endpoints[2:]):
        return 2
    return 3


def classify_points(pairs: Iterable, inner: LatticePolygon) -> dict:
    """Type of every boundary lattice point of ``inner`` given its radial pairs."""
    fans: dict = {p: [] for p in inner.boundary_points}
    for p, q in pairs:
        fans[p].append(q)
    return {p: point_type(sorted(qs)) for p, qs in fans.items()}


def type_score(types: dict) -> int:
    """The quantity b2 + 2*b3."""
    return sum(1 for t in types.values() if t == 2) + 2 * sum(1 for t in types.values() if t == 3)
