from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conedec.genfunc import (RationalGF, brion_gf, count_lattice_points,
                             enumerate_parallelepiped, gf_brute_force,
                             gf_equal_as_functions, gf_of_indicator_sum,
                             gf_of_piece, gf_pretty, gf_simplicial_cone,
                             lattice_points, make_term, specialize, zero_gf)
from conedec.indicators import gram_decomposition, whole_space_piece
from conedec.linalg import determinant, mat_vec, mat_inverse, vsub
from conedec.polyhedra import polytope_from_vertices
from conedec.triangulation import triangulate_cone
from conedec.polyhedra import tangent_cone

SEG = polytope_from_vertices([(-3,), (5,)])


def brute_parallelepiped(generators, apex, open_flags=None):
    """Oracle: scan the bounding box of the cell and test the coordinates."""
    d = len(generators[0])
    flags = open_flags or [False] * d
    corners = []
    for eps in product((0, 1), repeat=d):
        corners.append([apex[i] + sum(e * g[i] for e, g in zip(eps, generators))
                        for i in range(d)])
    cols = tuple(zip(*generators))
    inv = mat_inverse(cols)
    out = []
    lo = [min(c[i] for c in corners) for i in range(d)]
    hi = [max(c[i] for c in corners) for i in range(d)]
    import math
    for pt in product(*[range(math.floor(lo[i]), math.ceil(hi[i]) + 1)
                        for i in range(d)]):
        lam = mat_vec(inv, vsub(pt, apex))
        ok = all((0 < l <= 1) if f else (0 <= l < 1)
                 for l, f in zip(lam, flags))
        if ok:
            out.append(tuple(pt))
    return sorted(out)


class TestParallelepiped:
    def test_unimodular(self):
        assert enumerate_parallelepiped([(1, 0), (0, 1)], (0, 0)) == [(0, 0)]

    def test_det_two(self):
        pts = enumerate_parallelepiped([(1, 0), (1, 2)], (0, 0))
        assert pts == [(0, 0), (1, 1)]
        assert pts == brute_parallelepiped([(1, 0), (1, 2)], (0, 0))

    def test_open_flag_1d(self):
        assert enumerate_parallelepiped([(1,)], (0,), [True]) == [(1,)]

    def test_matches_brute_oracle(self):
        cases = [
            ([(2, 1), (0, 3)], (0, 0), [False, False]),
            ([(2, 1), (0, 3)], (0, 0), [True, False]),
            ([(2, 1), (0, 3)], (Fraction(1, 2), Fraction(1, 3)), [False, True]),
            ([(1, 0, 1), (0, 1, 1), (0, 0, 2)], (0, 0, 0), [False, True, True]),
            ([(1, 1), (1, -2)], (Fraction(-1, 2), 0), [False, False]),
        ]
        for gens, apex, flags in cases:
            assert enumerate_parallelepiped(gens, apex, flags) == \
                brute_parallelepiped(gens, apex, flags), (gens, apex, flags)

    def test_count_equals_det_for_integral_apex(self):
        for gens in [[(1, 0), (1, 2)], [(2, 1), (0, 3)], [(3, 1), (1, 2)]]:
            pts = enumerate_parallelepiped(gens, (0, 0))
            assert len(pts) == abs(determinant(gens))

    def test_dependent_generators_rejected(self):
        with pytest.raises(ValueError):
            enumerate_parallelepiped([(1, 0), (2, 0)], (0, 0))

    @given(st.tuples(st.integers(-3, 3), st.integers(-3, 3),
                     st.integers(-3, 3), st.integers(-3, 3)),
           st.tuples(st.fractions(min_value=-2, max_value=2, max_denominator=3),
                     st.fractions(min_value=-2, max_value=2, max_denominator=3)),
           st.tuples(st.booleans(), st.booleans()))
    @settings(max_examples=80, deadline=None)
    def test_random_cells_match_brute_oracle(self, entries, apex, flags):
        a, b, c, d = entries
        if a * d - b * c == 0:
            return
        gens = [(a, b), (c, d)]
        assert enumerate_parallelepiped(gens, apex, flags) == \
            brute_parallelepiped(gens, apex, list(flags))


class TestSimplicialConeGF:
    def test_upward_halfline(self):
        g = gf_simplicial_cone((-3,), [(1,)])
        assert g.terms == (make_term(1, [(-3,)], [(1,)]),)

    def test_downward_halfline_flips(self):
        g = gf_simplicial_cone((5,), [(-1,)])
        assert g.terms == (make_term(-1, [(6,)], [(1,)]),)

    def test_orthant(self):
        g = gf_simplicial_cone((0, 0), [(1, 0), (0, 1)])
        assert g.terms == (make_term(1, [(0, 0)], [(1, 0), (0, 1)]),)

    def test_numerator_count_is_det(self):
        g = gf_simplicial_cone((0, 0), [(1, 1), (1, -2)])
        assert len(g.terms[0].numerators) == 3


class TestBrion:
    def test_segment_closed_form(self):
        g = brion_gf(SEG)
        assert set(g.terms) == {make_term(1, [(-3,)], [(1,)]),
                                make_term(-1, [(6,)], [(1,)])}

    def test_unit_square_four_unimodular_terms(self):
        sq = polytope_from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
        g = brion_gf(sq)
        assert len(g.terms) == 4
        assert all(len(t.numerators) == 1 for t in g.terms)

    def test_pyramid_six_terms(self, pyramid_poly):
        g = brion_gf(pyramid_poly)
        assert len(g.terms) == 6  # 4 simple vertices + 2 half-open apex cells

    def test_counts_match_brute_force(self, corpus):
        for entry, p in corpus:
            assert count_lattice_points(brion_gf(p)) == len(lattice_points(p)), \
                entry.name

    def test_equal_as_functions(self, corpus):
        for entry, p in corpus:
            if p.dim > 3:
                continue
            assert gf_equal_as_functions(brion_gf(p), gf_brute_force(p)), \
                entry.name


class TestCount:
    def test_segment_02(self):
        g = RationalGF(1, (make_term(1, [(0,)], [(1,)]),
                           make_term(-1, [(3,)], [(1,)])))
        assert count_lattice_points(g) == 3

    def test_cube(self):
        cube = polytope_from_vertices(
            [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
        assert count_lattice_points(brion_gf(cube)) == 8

    def test_pyramid(self, pyramid_poly):
        assert count_lattice_points(brion_gf(pyramid_poly)) == 10

    def test_invalid_gf_detected(self):
        # a bare half-line has a genuine pole at z = 1
        g = gf_simplicial_cone((0,), [(1,)])
        with pytest.raises(ValueError):
            count_lattice_points(g)

    def test_rational_vertices(self):
        f = Fraction
        quad = polytope_from_vertices(
            [(f(-1, 2), f(-1, 3)), (f(7, 3), 0), (2, 2), (0, f(5, 2))])
        assert count_lattice_points(brion_gf(quad)) == len(lattice_points(quad))
        assert gf_equal_as_functions(brion_gf(quad), gf_brute_force(quad))

    def test_dilation_sweep(self, corpus):
        for entry, p in corpus:
            if p.dim > 2 and entry.name != "pyramid":
                continue
            for t in (1, 2, 3):
                scaled = polytope_from_vertices(
                    [tuple(t * c for c in v) for v in p.vertices])
                assert count_lattice_points(brion_gf(scaled)) == \
                    len(lattice_points(scaled)), (entry.name, t)


class TestEquality:
    def test_reflexive(self):
        g = brion_gf(SEG)
        assert gf_equal_as_functions(g, g)

    def test_scalar_difference_detected(self):
        g1 = RationalGF(1, (make_term(1, [(0,)], [(1,)]),))
        g2 = RationalGF(1, (make_term(2, [(0,)], [(1,)]),))
        assert not gf_equal_as_functions(g1, g2)

    def test_segment_brion_vs_brute(self):
        assert gf_equal_as_functions(brion_gf(SEG), gf_brute_force(SEG))

    def test_brute_force_monomial_counts(self, pyramid_poly):
        assert len(gf_brute_force(SEG).terms[0].numerators) == 9
        assert len(gf_brute_force(pyramid_poly).terms[0].numerators) == 10


class TestIndicatorImage:
    def test_line_piece_maps_to_zero(self):
        assert gf_of_piece(whole_space_piece(1)).terms == ()

    def test_segment_gram_image_is_brion(self):
        image = gf_of_indicator_sum(gram_decomposition(SEG))
        assert set(image.terms) == set(brion_gf(SEG).terms)

    def test_edge_tangent_cone_killed(self, pyramid_poly):
        # faces of positive dimension contribute nothing
        from conedec.indicators import piece
        e = pyramid_poly.edges[0]
        pc = piece(3, (pyramid_poly.facets[i] for i in e.facet_ids))
        assert gf_of_piece(pc).terms == ()

    def test_gram_image_counts(self, corpus):
        for entry, p in corpus:
            if p.dim > 2:
                continue
            image = gf_of_indicator_sum(gram_decomposition(p))
            assert count_lattice_points(image) == entry.expected_count, entry.name


class TestTriangulateCone:
    def test_simplicial_unchanged(self):
        tri = polytope_from_vertices([(0, 0), (1, 0), (0, 1)])
        c = tangent_cone(tri, tri.face_of_vertex(0))
        assert triangulate_cone(c) == [c]

    def test_pyramid_apex_two_cells(self, pyramid_poly):
        c = tangent_cone(pyramid_poly,
                         pyramid_poly.face_of_vertex(
                             pyramid_poly.vertex_index((0, 0, 0))))
        cells = triangulate_cone(c)
        assert len(cells) == 2
        assert all(cell.is_simplicial() for cell in cells)

    def test_pentagon_cone_three_cells(self, pentagon_cone_poly):
        p = pentagon_cone_poly
        c = tangent_cone(p, p.face_of_vertex(p.vertex_index((1, 1, 0))))
        assert len(c.generators) == 5
        cells = triangulate_cone(c)
        assert len(cells) == 3  # rays - dim + 1

    def test_line_containing_cone_rejected(self):
        tri = polytope_from_vertices([(0, 0), (1, 0), (0, 1)])
        whole = [f for f in tri.faces if f.dim == 2][0]
        c = tangent_cone(tri, whole)
        with pytest.raises(Exception):
            triangulate_cone(c)


class TestSpecialize:
    def test_laurent_polynomial_constant_term(self):
        g = gf_brute_force(SEG)
        assert specialize(g, [1], 0) == [Fraction(9)]

    def test_pretty(self):
        assert gf_pretty(brion_gf(SEG)) == "x^-3/(1-x) - x^6/(1-x)"
        assert gf_pretty(zero_gf(2)) == "0"
