"""Radial classification and dimension counts for tropical and algebraic moduli."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .exceptions import FormulaMismatchError, PreconditionError
from .lattice import LatticePolygon, classify, column_vectors, interior_hull, is_maximal, maximal_model
from .radial import classify_points, radial_pairs
from .subdivision.constructions import prune
from .subdivision.enumeration import _check_size, enumerate_branch, enumerate_unimodular, first_branches
from .subdivision.regular import is_regular
from .subdivision.triangulation import Triangulation, is_unimodular
from .tropical import moduli_rank


@dataclass(frozen=True)
class DimensionReport:
    """A dimension together with the quantities it was computed from."""

    value: int
    method: str
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value, "method": self.method, "witnesses": dict(sorted(self.witnesses.items()))}


# --- closed formulas --------------------------------------------------------


def tropical_formula(g: int, g1: int, b1: int, b2: int) -> int:
    """3g - 3 - 2g1 - 2b1 - b2."""
    return 3 * g - 3 - 2 * g1 - 2 * b1 - b2


def algebraic_formula(num_points: int, c: int) -> int:
    """|points| - c - 3."""
    return num_points - c - 3


def d_planar(g: int) -> int:
    """Dimension of the moduli of tropical plane curves of genus ``g``."""
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    return {2: 3, 3: 6, 7: 16}.get(g, 2 * g + 1)


# --- radial classification --------------------------------------------------


@dataclass(frozen=True)
class RadialReport:
    """Radial edges of a pruned triangulation and the types of the boundary points of the interior polygon."""

    radial_edges: tuple
    point_types: dict
    b1: int
    b2: int
    b3: int

    @property
    def score(self) -> int:
        return self.b2 + 2 * self.b3


def _require_nonhyperelliptic(p: LatticePolygon, what: str) -> None:
    cls = classify(p)
    if cls.kind != "nonhyperelliptic":
        raise PreconditionError(f"{what} requires a nonhyperelliptic polygon (got {cls.kind})")


def radial_classification(t: Triangulation) -> RadialReport:
    """Classify the boundary points of the interior polygon by their radial edges.

    The triangulation is pruned first (a no-op when it already is), so the
    outer endpoints are taken on the boundary of the pruned polygon.
    """
    _require_nonhyperelliptic(t.polygon, "radial classification")
    if not is_unimodular(t):
        raise PreconditionError("radial classification requires a unimodular triangulation")
    tp = prune(t)
    inner = interior_hull(tp.polygon).polygon
    edges = [(tp.points[a], tp.points[b]) for a, b in tp.edges]
    pairs = radial_pairs(edges, inner, set(tp.polygon.boundary_points))
    types = classify_points(pairs, inner)
    if any(v == 0 for v in types.values()):
        raise AssertionError("boundary point of the interior polygon without radial edges")
    counts = [sum(1 for v in types.values() if v == k) for k in (1, 2, 3)]
    return RadialReport(tuple(pairs), dict(sorted(types.items())), *counts)


def expected_radial_count(t: Triangulation) -> int:
    """g + r - g1, with r the boundary count of the pruned polygon."""
    pp = prune(t).polygon
    return pp.genus + pp.num_boundary - len(interior_hull(pp).polygon.interior_points)


# --- dim of the tropical moduli of a triangulation --------------------------


def _interior_genus(p: LatticePolygon) -> int:
    ih = interior_hull(p)
    return len(ih.polygon.interior_points) if ih.polygon is not None else 0


def dim_MT(t: Triangulation, method: str = "both") -> DimensionReport:
    """Dimension of the tropical curves dual to ``t``.

    ``method`` is "formula", "oracle" or "both"; with "both" the two must
    agree.  Hyperelliptic polygons only admit the rank oracle.
    """
    p = t.polygon
    g = p.genus
    if g < 2:
        raise PreconditionError("dimension requires genus at least 2")
    if method not in ("formula", "oracle", "both"):
        raise PreconditionError(f"unknown method {method!r}")
    hyper = classify(p).kind != "nonhyperelliptic"
    if hyper and method == "formula":
        raise PreconditionError("formula requires a nonhyperelliptic polygon")
    wit: dict = {"g": g}
    value = None
    if not hyper and method in ("formula", "both"):
        rep = radial_classification(t)
        g1 = _interior_genus(p)
        value = tropical_formula(g, g1, rep.b1, rep.b2)
        wit.update(g1=g1, b1=rep.b1, b2=rep.b2, b3=rep.b3)
    if method in ("oracle", "both"):
        rk = moduli_rank(t)
        wit["rank"] = rk
        if value is not None and value != rk:
            raise FormulaMismatchError(f"formula/oracle mismatch: formula {value}, rank {rk}")
        value = rk
    used = "rank_oracle" if method == "oracle" or hyper else "formula"
    return DimensionReport(value, used, wit)


def score(t: Triangulation) -> int:
    """dim of the moduli of ``t``: the formula when it applies, else the rank oracle."""
    if classify(t.polygon).kind == "nonhyperelliptic":
        rep = radial_classification(t)
        return tropical_formula(t.polygon.genus, _interior_genus(t.polygon), rep.b1, rep.b2)
    return moduli_rank(t)


# --- dim over a polygon -----------------------------------------------------


def _threads(n_jobs: int | None) -> int:
    if n_jobs is not None:
        return max(1, n_jobs)
    env = os.environ.get("TROPMOD_THREADS")
    return max(1, int(env)) if env else 1


def _branch_scores(args) -> list:
    p, branch = args
    return [(score(t), t) for t in enumerate_branch(p, branch, None)]


def _scored(p: LatticePolygon, cap: int | None, n_jobs: int | None) -> list:
    workers = _threads(n_jobs)
    if cap is not None or workers == 1:
        return [(score(t), t) for t in enumerate_unimodular(p, cap)]
    _check_size(p, cap)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = ex.map(_branch_scores, [(p, b) for b in first_branches(p)])
        return [x for part in parts for x in part]


def dim_MDelta_exhaustive(p: LatticePolygon, cap: int | None = None, n_jobs: int | None = None) -> DimensionReport:
    """Maximum dimension over the regular unimodular triangulations of ``p``.

    Triangulations are scored first and regularity is checked from the top
    score down.  With a cap the value is a lower bound and the report says
    so.  The maximum over all unimodular triangulations is reported as well.
    """
    if p.genus < 2:
        raise PreconditionError("dimension requires genus at least 2")
    scored = _scored(p, cap, n_jobs)
    scored.sort(key=lambda st: -st[0])
    value = None
    checked = 0
    for s, t in scored:
        checked += 1
        if is_regular(t):
            value = s
            break
    if value is None:
        raise PreconditionError("no regular unimodular triangulation found")
    wit = {
        "triangulations": len(scored),
        "unfiltered_max": scored[0][0],
        "regularity_checks": checked,
        "capped": cap is not None and len(scored) >= cap,
        "lower_bound": cap is not None and len(scored) >= cap,
    }
    return DimensionReport(value, "exhaustive", wit)


@dataclass(frozen=True)
class JPattern:
    """Support of the J-matrix: deficiency points against column vectors of the maximal model."""

    rows: tuple
    cols: tuple
    support: tuple

    @property
    def nonzeros(self) -> int:
        return sum(map(sum, self.support))


def j_pattern(p: LatticePolygon) -> JPattern:
    p0 = maximal_model(p)
    own = set(p.lattice_points)
    a = tuple(q for q in p0.lattice_points if q not in own)
    cols = tuple(column_vectors(p0))
    support = tuple(tuple((q[0] - cv.v[0], q[1] - cv.v[1]) in own for cv in cols) for q in a)
    return JPattern(a, cols, support)


def generic_rank(j: JPattern) -> int:
    """Largest rank of a matrix with the given support (the term rank)."""
    if not j.rows or not j.cols:
        return 0
    m = csr_matrix([[1 if s else 0 for s in row] for row in j.support])
    match = maximum_bipartite_matching(m, perm_type="column")
    return int((match >= 0).sum())


def dim_MDelta_closed(p: LatticePolygon) -> DimensionReport:
    """g - 3 + r - c for maximal polygons; the deficiency correction otherwise."""
    _require_nonhyperelliptic(p, "closed form")
    if p.genus < 2:
        raise PreconditionError("dimension requires genus at least 2")
    if is_maximal(p):
        c = len(column_vectors(p))
        g, r = p.genus, p.num_boundary
        return DimensionReport(g - 3 + r - c, "closed_form", {"g": g, "r": r, "c": c})
    p0 = maximal_model(p)
    base = dim_MDelta_closed(p0)
    j = j_pattern(p)
    rk = generic_rank(j)
    value = base.value - len(j.rows) + rk
    wit = dict(base.witnesses)
    wit.update(maximal_value=base.value, deficiency=len(j.rows), rankJ=rk)
    return DimensionReport(value, "closed_form", wit)


def algebraic_dim(p: LatticePolygon) -> DimensionReport:
    """|lattice points| - c - 3 for maximal nonhyperelliptic polygons."""
    _require_nonhyperelliptic(p, "algebraic dimension")
    if not is_maximal(p):
        raise PreconditionError("algebraic dimension requires a maximal polygon")
    n = len(p.lattice_points)
    c = len(column_vectors(p))
    return DimensionReport(algebraic_formula(n, c), "closed_form", {"points": n, "c": c})


# --- polygons attaining 2g + 1 ----------------------------------------------

_SPORADIC = {
    6: [[(0, 0), (0, 2), (2, 0), (4, 2), (2, 4)]],
    7: [[(0, 0), (0, 2), (4, 0), (4, 2), (2, 4)]],
    8: [[(0, 0), (0, 4), (4, 0), (4, 2), (2, 4)]],
    10: [[(0, 0), (0, 2), (3, 0), (5, 2), (2, 4), (5, 4)]],
}


def theorem_2g1_polygons(g: int) -> list[LatticePolygon]:
    """The maximal polygons of genus ``g`` whose moduli dimension is 2g + 1."""
    if g < 4:
        raise PreconditionError("list is defined for genus at least 4")
    if g % 2 == 0:
        h = (g + 2) // 2
        family = [(0, 0), (0, 3), (h, 0), (h, 3)]
    else:
        family = [(0, 0), (0, 3), ((g + 5) // 2, 0), ((g - 1) // 2, 3)]
    return [LatticePolygon(family)] + [LatticePolygon(v) for v in _SPORADIC.get(g, [])]

