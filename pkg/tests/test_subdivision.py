import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropmod.exceptions import NotHoneycombError, NotRegularError, PreconditionError
from tropmod.lattice import LatticePolygon, interior_hull
from tropmod.radial import classify_points, radial_pairs, type_score
from tropmod.subdivision import (
    Triangulation,
    beehive,
    cell_frame,
    certify,
    composition_triangles,
    enumerate_branch,
    enumerate_unimodular,
    first_branches,
    flip_graph_triangulations,
    fold_values,
    honeycomb,
    induce,
    is_pruned,
    is_regular,
    is_regular_fm,
    is_unimodular,
    lift_with_fixed_values,
    prune,
    random_parts,
    refine_cells,
    refine_regular,
    regularity_witness,
)
from tropmod.tropical import moduli_rank

from conftest import CHOPPED, SMALL_CORPUS, SQUARE3, T4

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def score(t):
    tp = prune(t)
    inner = interior_hull(tp.polygon).polygon
    edges = [(tp.points[a], tp.points[b]) for a, b in tp.edges]
    return type_score(classify_points(radial_pairs(edges, inner, set(tp.polygon.boundary_points)), inner))


def roundtrip(t):
    sub = induce(t.polygon, dict(zip(t.points, t.heights)))
    return sub.is_triangulation() and sub.to_triangulation() == t


class TestInduce:
    def test_zero_heights_single_cell(self, t4):
        sub = induce(t4, {q: 0 for q in t4.lattice_points})
        assert len(sub.cells) == 1 and sub.cells[0] == t4

    def test_five_point_polygon_three_cells(self):
        # apex lowered: two side triangles and a bottom cell containing (1, 0)
        p = LatticePolygon([(0, 0), (2, 0), (1, 2)])
        assert len(p.lattice_points) == 5
        sub = induce(p, {q: (0 if q == (1, 1) else 1) for q in p.lattice_points})
        assert sorted(sub.marked) == sorted(
            [((0, 0), (1, 0), (1, 1), (2, 0)), ((0, 0), (1, 1), (1, 2)), ((1, 1), (1, 2), (2, 0))]
        )

    def test_point_above_hull_is_unmarked(self):
        p = LatticePolygon([(0, 0), (2, 0), (0, 2)])
        sub = induce(p, {q: (5 if q == (1, 0) else 0) for q in p.lattice_points})
        assert all((1, 0) not in m for m in sub.marked)

    def test_chopped_square_frame(self, chopped):
        # heights 1 on the boundary, 0 inside
        sub = induce(chopped, {q: int(chopped.on_boundary(q)) for q in chopped.lattice_points})
        inner = set(interior_hull(chopped).polygon.vertices)
        assert any(set(m) == inner for m in sub.marked)
        area = sum(LatticePolygon(list(m)).area2 for m in sub.marked)
        assert area == chopped.area2


class TestUnimodular:
    def test_unit_square_diagonal(self):
        t = Triangulation.from_triangles(UNIT_SQUARE, [(0, 1, 2), (0, 2, 3)])
        assert is_unimodular(t)

    def test_big_triangle(self):
        t = Triangulation.from_triangles([(0, 0), (2, 0), (0, 2)], [(0, 1, 2)])
        assert not is_unimodular(t)


class TestRegularity:
    def test_requires_unimodular(self):
        t = Triangulation.from_triangles([(0, 0), (2, 0), (0, 2)], [(0, 1, 2)])
        with pytest.raises(PreconditionError, match="determinant criterion requires unimodular triangulation"):
            regularity_witness(t)

    def test_rectangle(self):
        p = LatticePolygon([(0, 0), (2, 0), (2, 1), (0, 1)])
        for t in enumerate_unimodular(p):
            wit = regularity_witness(t)
            assert wit is not None and all(m >= 1 for m in wit.margins)

    def test_three_triangle_counts_agree_with_fm(self):
        p = LatticePolygon([(0, 0), (3, 0), (0, 3)])
        ts = list(enumerate_unimodular(p))
        simplex = sum(is_regular(t) for t in ts)
        fm = sum(is_regular_fm(t) for t in ts)
        assert simplex == fm == 79

    def test_non_regular_instance(self):
        # one of the two non-regular unimodular triangulations of the degree-4 triangle
        tris = [
            [(0, 0), (1, 0), (2, 1)], [(0, 0), (1, 1), (0, 1)], [(0, 0), (2, 1), (1, 1)], [(0, 1), (1, 1), (0, 2)],
            [(0, 2), (1, 1), (0, 3)], [(0, 3), (1, 1), (0, 4)], [(0, 4), (1, 1), (1, 2)], [(0, 4), (1, 2), (1, 3)],
            [(1, 0), (2, 0), (2, 1)], [(1, 1), (2, 1), (1, 2)], [(1, 2), (2, 1), (4, 0)], [(1, 2), (2, 2), (1, 3)],
            [(1, 2), (3, 1), (2, 2)], [(1, 2), (4, 0), (3, 1)], [(2, 0), (3, 0), (2, 1)], [(2, 1), (3, 0), (4, 0)],
        ]
        t = Triangulation.from_point_triangles([tuple(map(tuple, x)) for x in tris])
        t.check()
        assert is_unimodular(t)
        assert regularity_witness(t) is None and not is_regular_fm(t)

    def test_width_one_always_regular(self):
        p = LatticePolygon([(0, 0), (4, 0), (2, 1), (0, 1)])
        assert all(is_regular(t) for t in enumerate_unimodular(p))

    def test_certify_rejects_degenerate_heights(self):
        t = Triangulation.from_triangles(UNIT_SQUARE, [(0, 1, 2), (0, 2, 3)])
        with pytest.raises(NotRegularError, match="heights not in open secondary cone"):
            certify(t, [0, 0, 0, 0])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
    def test_affine_invariance(self, seed, a, b, c):
        rng = random.Random(seed)
        p = LatticePolygon([(0, 0), (3, 0), (0, 3)])
        ts = list(enumerate_unimodular(p, cap=30))
        t = rng.choice(ts)
        h = [Fraction(rng.randint(-9, 9)) for _ in t.points]
        shifted = [v + a * q[0] + b * q[1] + c for v, q in zip(h, t.points)]
        assert fold_values(t, h) == fold_values(t, shifted)

    def test_witness_roundtrip_on_enumerated(self):
        p = LatticePolygon(SMALL_CORPUS[1])
        for t in enumerate_unimodular(p):
            wit = regularity_witness(t)
            assert wit is not None
            assert roundtrip(t.with_heights(wit.heights))


class TestRefineRegular:
    def test_unit_square(self):
        p = LatticePolygon(UNIT_SQUARE)
        t = refine_regular(induce(p, {q: 0 for q in p.lattice_points}))
        assert len(t.triangles) == 2 and is_unimodular(t)

    @pytest.mark.parametrize("verts", [T4, CHOPPED])
    def test_frame_refinement_restricts(self, verts):
        p = LatticePolygon(verts)
        frame = cell_frame(p)
        t = refine_regular(frame.subdivision, frame.heights)
        assert is_unimodular(t) and frame.subdivision.refined_by(t)
        assert roundtrip(t)

    def test_unmarked_point_rejected(self):
        p = LatticePolygon([(0, 0), (2, 0), (0, 2)])
        sub = induce(p, {q: (5 if q == (1, 0) else 0) for q in p.lattice_points})
        with pytest.raises(PreconditionError):
            refine_regular(sub)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=10, max_size=10))
    def test_random_subdivisions(self, hs):
        # a convex base with 0/1 noise keeps every point on the lower hull
        p = LatticePolygon([(0, 0), (3, 0), (0, 3)])
        w = {q: 2 * (q[0] ** 2 + q[1] ** 2) + h for q, h in zip(p.lattice_points, hs)}
        sub = induce(p, w)
        t = refine_regular(sub)
        assert is_unimodular(t) and sub.refined_by(t) and roundtrip(t)


class TestLift:
    def test_no_anchors(self):
        p = LatticePolygon(UNIT_SQUARE)
        sub = induce(p, {(0, 0): 0, (1, 0): 0, (1, 1): 1, (0, 1): 0})
        assert lift_with_fixed_values(sub, {}) == sub.heights

    def test_three_anchors_keep_subdivision(self):
        p = LatticePolygon(UNIT_SQUARE)
        sub = induce(p, {(0, 0): 0, (1, 0): 0, (1, 1): 1, (0, 1): 0})
        h = lift_with_fixed_values(sub, {(0, 0): 0, (1, 0): 5, (0, 1): -2})
        assert (h[(0, 0)], h[(1, 0)], h[(0, 1)]) == (0, 5, -2)
        assert induce(p, h).marked == sub.marked

    def test_dependent_anchors(self):
        p = LatticePolygon([(0, 0), (2, 0), (0, 2)])
        sub = induce(p, {q: 0 for q in p.lattice_points})
        with pytest.raises(PreconditionError, match="affinely dependent"):
            lift_with_fixed_values(sub, {(0, 0): 0, (1, 0): 1, (2, 0): 3})

    def test_shared_points_agree_across_cells(self, square3):
        frame = cell_frame(square3)
        rng = random.Random(3)
        choices = {
            i: composition_triangles(frame.bottom[i], frame.top[i], random_parts(len(frame.bottom[i]) - 1, len(frame.top[i]) - 1, rng))
            for i in range(len(frame.facet_cells))
        }
        t = refine_cells(frame, choices)
        for i, tris in choices.items():
            cell = set(frame.bottom[i]) | set(frame.top[i])
            got = {tuple(sorted(x)) for x in (t.triangle_points(k) for k in range(len(t.triangles))) if set(x) <= cell}
            assert got == {tuple(sorted(x)) for x in tris}


class TestEnumeration:
    @pytest.mark.parametrize(
        "verts,count",
        [(UNIT_SQUARE, 2), ([(0, 0), (2, 0), (0, 2)], 4), ([(0, 0), (2, 0), (2, 2), (0, 2)], 64), ([(0, 0), (3, 0), (0, 3)], 79)],
    )
    def test_counts(self, verts, count):
        assert sum(1 for _ in enumerate_unimodular(LatticePolygon(verts))) == count

    @pytest.mark.parametrize("verts", [[(0, 0), (2, 0), (0, 2)], [(0, 0), (2, 0), (2, 2), (0, 2)], SMALL_CORPUS[2]])
    def test_flip_graph_oracle(self, verts):
        p = LatticePolygon(verts)
        keys = {t.key() for t in enumerate_unimodular(p)}
        seed = next(iter(enumerate_unimodular(p, cap=1)))
        assert flip_graph_triangulations(seed) == keys

    def test_all_distinct_and_valid(self):
        ts = list(enumerate_unimodular(LatticePolygon(SMALL_CORPUS[3])))
        assert len({t.key() for t in ts}) == len(ts)
        for t in ts:
            t.check()
            assert is_unimodular(t)

    def test_guard(self):
        p = LatticePolygon([(0, 0), (4, 0), (4, 4), (0, 4)])
        with pytest.raises(PreconditionError, match="instance too large; set a cap"):
            next(enumerate_unimodular(p))
        assert sum(1 for _ in enumerate_unimodular(p, cap=5)) == 5

    def test_branches_partition(self):
        p = LatticePolygon([(0, 0), (3, 0), (0, 3)])
        parts = [{t.key() for t in enumerate_branch(p, b)} for b in first_branches(p)]
        assert sum(len(x) for x in parts) == 79
        assert len(set().union(*parts)) == 79


class TestPrune:
    def test_identity_when_pruned(self, t4):
        t = beehive(t4)
        assert is_pruned(t) and prune(t) == t

    def test_honeycomb_corner_removed(self):
        # the corner (5,0),(6,0),(5,1) does not meet the interior polygon
        p = LatticePolygon([(0, 0), (6, 0), (0, 3), (3, 3)])
        t = honeycomb(p)
        tp = prune(t)
        assert (6, 0) not in tp.points
        assert tp.polygon.genus == p.genus and is_pruned(tp)

    def test_genus_guard(self):
        t = Triangulation.from_triangles(UNIT_SQUARE, [(0, 1, 2), (0, 2, 3)])
        with pytest.raises(PreconditionError):
            prune(t)

    @pytest.mark.parametrize("verts", SMALL_CORPUS[:4])
    def test_rank_unchanged(self, verts):
        from tropmod.tropical import kappa_matrix, lambda_matrix

        for t in enumerate_unimodular(LatticePolygon(verts), cap=20):
            tp = prune(t)
            assert all(is_pruned(x) for x in [tp])
            assert moduli_rank(t) == (kappa_matrix(tp) @ lambda_matrix(tp)).rank()


class TestHoneycomb:
    def test_triangle(self, t4):
        t = honeycomb(t4)
        assert len(t.triangles) == 16 and is_unimodular(t) and roundtrip(t)

    def test_unit_triangle(self):
        t = honeycomb(LatticePolygon([(0, 0), (1, 0), (0, 1)]))
        assert len(t.triangles) == 1

    def test_ineligible(self):
        with pytest.raises(NotHoneycombError):
            honeycomb(LatticePolygon([(0, 0), (2, 1), (0, 1)]))

    @pytest.mark.parametrize(
        "verts",
        [T4, SQUARE3, [(0, 2), (2, 0), (4, 0), (4, 2), (2, 4), (0, 4)], [(0, 0), (5, 0), (0, 5)], [(0, 0), (4, 0), (4, 4), (0, 4)]],
    )
    def test_b1_zero_and_b2_count(self, verts):
        from tropmod.moduli import radial_classification

        p = LatticePolygon(verts)
        rep = radial_classification(honeycomb(p))
        inner = interior_hull(p).polygon
        non_vertex = [q for q in inner.boundary_points if q not in inner.vertices]
        assert rep.b1 == 0 and rep.b2 == len(non_vertex)
        assert all(rep.point_types[q] == 3 for q in inner.vertices)


class TestBeehive:
    @pytest.mark.parametrize("verts,expected", [(T4, 6), (SQUARE3, 8)])
    def test_score(self, verts, expected):
        t = beehive(LatticePolygon(verts))
        assert is_unimodular(t) and is_regular(t) and roundtrip(t)
        assert score(t) == expected

    def test_chopped_square(self, chopped):
        t = beehive(chopped)
        assert is_unimodular(t) and roundtrip(t)
        assert moduli_rank(t) == 9

    def test_hyperelliptic_rejected(self):
        with pytest.raises(PreconditionError):
            beehive(LatticePolygon([(0, 0), (0, 2), (4, 0), (4, 2)]))

    @pytest.mark.parametrize("verts", SMALL_CORPUS)
    def test_corpus_outputs_regular(self, verts):
        t = beehive(LatticePolygon(verts))
        assert is_unimodular(t) and roundtrip(t)

    def test_contains_interior_boundary_edges(self, t4):
        t = beehive(t4)
        inner = interior_hull(t4).polygon
        keys = {frozenset(e) for e in t.key()}
        for i in range(len(inner.vertices)):
            pts = inner.edge_points(i)
            for a, b in zip(pts, pts[1:]):
                assert frozenset((a, b)) in keys

    @pytest.mark.parametrize("verts", [T4, SQUARE3, CHOPPED, SMALL_CORPUS[5]])
    def test_random_cell_choices_extend(self, verts):
        frame = cell_frame(LatticePolygon(verts))
        if frame.order is None:
            pytest.skip("cells cannot be glued in a chain")
        rng = random.Random(len(verts))
        for _ in range(3):
            choices = {
                i: composition_triangles(
                    frame.bottom[i], frame.top[i], random_parts(len(frame.bottom[i]) - 1, len(frame.top[i]) - 1, rng)
                )
                for i in range(len(frame.facet_cells))
            }
            t = refine_cells(frame, choices)
            assert is_unimodular(t) and roundtrip(t)
