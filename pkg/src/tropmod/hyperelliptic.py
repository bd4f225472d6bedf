"""Maximal hyperelliptic polygons, the strip polygon and the chain of loops."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _lp
from .exceptions import NonmaximalHyperellipticError, PreconditionError, TropmodError
from .lattice import LatticePolygon, classify, equivalent
from .moduli import DimensionReport
from .subdivision.constructions import prune
from .subdivision.regular import certify, fold_rows, regularity_witness
from .subdivision.triangulation import Triangulation
from .tropical import LinearMap, TropicalCurve, _skeleton_combinatorics, kappa_matrix, lambda_matrix


def _require_genus(g: int) -> None:
    if g < 2:
        raise PreconditionError("genus must be at least 2")


def maximal_hyperelliptic(g: int) -> list[LatticePolygon]:
    """The g + 2 maximal hyperelliptic polygons of genus ``g``."""
    _require_genus(g)
    return [LatticePolygon([(0, 0), (0, 2), (g + k, 0), (g + 2 - k, 2)]) for k in range(1, g + 3)]


def is_maximal_hyperelliptic(p: LatticePolygon) -> bool:
    """Whether ``p`` is equivalent to one of the maximal hyperelliptic polygons of its genus."""
    if classify(p).kind != "hyperelliptic":
        raise PreconditionError("polygon is not hyperelliptic")
    return any(equivalent(p, q) for q in maximal_hyperelliptic(p.genus))


def strip_polygon(g: int) -> tuple[LatticePolygon, Triangulation]:
    """The strip polygon of genus ``g`` with its fixed triangulation and a witness.

    The middle row is joined by horizontal chords, the top vertex is joined to
    the whole middle row, and each bottom point is joined to the middle row
    points straight above it and one step to the right.
    """
    _require_genus(g)
    p = LatticePolygon([(0, 0), (0, 2), (g + 1, 0), (g + 1, 1)])
    tris = []
    for j in range(g + 1):
        tris.append(((0, 2), (j, 1), (j + 1, 1)))
        tris.append(((j, 0), (j + 1, 1), (j, 1)))
        tris.append(((j, 0), (j + 1, 0), (j + 1, 1)))
    t = Triangulation.from_point_triangles(tris)
    t.check()
    wit = regularity_witness(t)
    if wit is None:
        raise TropmodError("strip triangulation is not regular")
    return p, t.with_heights(wit.heights)


@dataclass(frozen=True)
class ChainLengths:
    """Edge lengths of the chain of loops, labelled from left to right.

    ``h[j - 1]`` is the bridge-free edge shared by loops j and j + 1;
    ``u[c - 2]`` and ``w[c - 2]`` are the upper and lower edges of loop c for
    2 <= c <= g - 1.
    """

    l_start: Fraction
    l_end: Fraction
    h: tuple
    u: tuple
    w: tuple

    @property
    def genus(self) -> int:
        return len(self.h) + 1

    def vector(self) -> list:
        """Coordinates in the order l_start, h, u, w, l_end."""
        return [self.l_start, *self.h, *self.u, *self.w, self.l_end]

    def reversed(self) -> "ChainLengths":
        return ChainLengths(self.l_end, self.l_start, self.h[::-1], self.u[::-1], self.w[::-1])

    def to_json(self) -> dict:
        s = lambda xs: [str(Fraction(x)) for x in xs]
        return {"l_start": str(Fraction(self.l_start)), "l_end": str(Fraction(self.l_end)), "h": s(self.h), "u": s(self.u), "w": s(self.w)}


def _satisfies(c: ChainLengths) -> bool:
    g = c.genus
    if any(u != w for u, w in zip(c.u, c.w)):
        return False
    if not (c.h[0] <= c.l_start <= 2 * c.h[0] and c.h[-1] <= c.l_end):
        return False
    for k in range(2, g):
        lo = c.h[k - 2] + k * c.u[k - 2]
        hi = c.h[k - 2] + (k + 1) * c.u[k - 2]
        if not lo <= c.h[k - 1] <= hi:
            return False
    return True


def chain_membership(c: ChainLengths, g: int) -> bool:
    """Whether ``c`` lies in the closure of the lengths realised by the strip triangulation.

    The chain is symmetric under reversal, so both orientations are tried.
    Zero lengths are allowed because the test is on the closure.
    """
    _require_genus(g)
    if len(c.h) != g - 1 or len(c.u) != g - 2 or len(c.w) != g - 2:
        raise PreconditionError("chain lengths do not match the genus")
    if any(Fraction(x) < 0 for x in c.vector()):
        raise PreconditionError("chain lengths must be nonnegative")
    vec = lambda xs: tuple(Fraction(x) for x in xs)
    c = ChainLengths(Fraction(c.l_start), Fraction(c.l_end), vec(c.h), vec(c.u), vec(c.w))
    return _satisfies(c) or _satisfies(c.reversed())


def equality_matrix(g: int) -> list[list[int]]:
    """Rows u_c - w_c = 0 in the coordinates of ``ChainLengths.vector``."""
    _require_genus(g)
    n = 3 * g - 3
    rows = []
    for c in range(2, g):
        row = [0] * n
        row[1 + (g - 1) + (c - 2)] = 1
        row[1 + (g - 1) + (g - 2) + (c - 2)] = -1
        rows.append(row)
    return rows


def chain_labels(t: Triangulation, g: int) -> list[str]:
    """Label of each skeleton edge of the pruned strip triangulation, in skeleton order.

    Labels are "l_start", "l_end", "h<j>", "u<c>" and "w<c>".
    """
    tp = prune(t)
    _, edges = _skeleton_combinatorics(tp)
    labels = []
    for _, _, ms in edges:
        segs = [tuple(sorted((tp.points[a], tp.points[b]))) for a, b in (tp.interior_edges[m] for m in ms)]
        if len(segs) == 1 and segs[0][0][1] == 1 and segs[0][1][1] == 1 and segs[0][0][0] >= 1 and segs[0][1][0] <= g:
            labels.append(f"h{segs[0][0][0]}")
            continue
        centres = set.intersection(*({q for q in s if q[1] == 1 and 1 <= q[0] <= g} for s in segs))
        if len(centres) != 1:
            raise TropmodError("skeleton edge is not on a single loop")
        (j, _), = centres
        if j == 1:
            labels.append("l_start")
        elif j == g:
            labels.append("l_end")
        elif any((0, 2) in s for s in segs):
            labels.append(f"u{j}")
        else:
            labels.append(f"w{j}")
    return labels


def chain_lengths(curve: TropicalCurve, g: int) -> ChainLengths:
    """Read the chain-of-loops coordinates off a curve dual to the pruned strip triangulation."""
    t = curve.triangulation
    labels = chain_labels(t, g)
    values = kappa_matrix(t)([ln for _, _, ln in curve.bounded_edges])
    d = dict(zip(labels, values))
    return ChainLengths(
        d["l_start"],
        d["l_end"],
        tuple(d[f"h{j}"] for j in range(1, g)),
        tuple(d[f"u{c}"] for c in range(2, g)),
        tuple(d[f"w{c}"] for c in range(2, g)),
    )


def strip_moduli_map(g: int) -> tuple[Triangulation, LinearMap, list]:
    """The pruned strip triangulation, its kappa-lambda map and the row labels."""
    _, t = strip_polygon(g)
    tp = prune(t)
    return tp, kappa_matrix(tp) @ lambda_matrix(tp), chain_labels(tp, g)


def realize(t: Triangulation, target: Sequence, kl: LinearMap | None = None) -> dict | None:
    """Heights in the open cone of ``t`` whose skeleton lengths equal ``target``.

    Solves kl(w) = s*target with every fold determinant at least 1 and
    s >= 1 by exact simplex, then rescales by s.  Returns None when the
    target is not realised by ``t``.
    """
    if kl is None:
        kl = kappa_matrix(t) @ lambda_matrix(t)
    n = len(t.points)
    target = [Fraction(x) for x in target]
    a: list = []
    b: list = []
    for row, y in zip(kl.matrix, target):
        eq = list(row) + [-y]
        a.append(eq)
        b.append(0)
        a.append([-x for x in eq])
        b.append(0)
    for row in fold_rows(t):
        a.append(list(row) + [0])
        b.append(1)
    a.append([0] * n + [1])
    b.append(1)
    x = _lp.feasible_point(a, b)
    if x is None:
        return None
    s = x[-1]
    w = {p: v / s for p, v in zip(t.points, x[:-1])}
    certify(t, w)
    return w


def strip_dimension(g: int) -> DimensionReport:
    """rank of kappa-lambda for the strip triangulation, which is 2g - 1."""
    _, kl, _ = strip_moduli_map(g)
    return DimensionReport(kl.rank(), "rank_oracle", {"g": g})


def dim_hyperelliptic(p: LatticePolygon) -> DimensionReport:
    """2g - 1 for a maximal hyperelliptic polygon; the strip gives the lower bound."""
    if not is_maximal_hyperelliptic(p):
        raise NonmaximalHyperellipticError("dimension is only known for maximal hyperelliptic polygons")
    g = p.genus
    low = strip_dimension(g).value
    return DimensionReport(2 * g - 1, "closed_form", {"g": g, "strip_rank": low})
