import random

import pytest

from codim2.errors import InvalidConfiguration
from codim2.lattice import compute_stats, relevant_lines, validate_b
from codim2.poly import Poly, VarContext
from codim2.polygon import (
    LatticePolygon,
    boundary_point_count,
    build_PB,
    build_QB,
    chow_polygon,
    degree_DA,
    degree_via_mu,
    dehomog_newton,
    is_centrally_symmetric,
    lattice_point_count,
    mu_vector,
    newton_polygon_DA,
    newton_polygon_of,
    polygon_svg,
    secondary_polygon,
)

from helpers import lattice_points_oracle, random_b

INTRO = validate_b(
    [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1), (-2, 0), (0, -2), (2, 2)],
    list("abcdefghi"),
)
SEC4 = validate_b([(1, 3), (5, -1), (1, -4), (-2, -3), (-3, 2), (-2, 3)])
CUBIC = validate_b([(1, 0), (-2, 1), (1, -2), (0, 1)])


class TestBuildPB:
    def test_intro_hexagon(self):
        p = build_PB(INTRO)
        assert p.vertices == ((0, 0), (1, 0), (4, 3), (4, 4), (1, 4), (0, 3))

    def test_triangle(self):
        p = build_PB(validate_b([(1, 0), (0, 1), (-1, -1)]))
        assert set(p.vertices) == {(0, 0), (1, 0), (1, 1)}

    def test_unit_square(self):
        p = build_PB(validate_b([(1, 0), (-1, 0), (0, 1), (0, -1)]))
        assert p.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))

    def test_zero_rows_ignored(self):
        p = build_PB(validate_b([(1, 0), (0, 1), (-1, -1), (0, 0)]))
        assert set(p.vertices) == {(0, 0), (1, 0), (1, 1)}

    def test_edges_close_and_ccw_fuzz(self):
        rng = random.Random(51)
        for _ in range(60):
            b = random_b(rng)
            p = build_PB(b)
            assert sum(e[0] for e in p.edges()) == 0
            assert sum(e[1] for e in p.edges()) == 0
            assert p.twice_area() > 0
            assert p.vertices[0] == (0, 0) == min(p.vertices)


class TestMu:
    def test_intro(self):
        # ccw reading order of the published value is (4,3,6,0,0,0,1,4,8)
        assert mu_vector(INTRO) == (4, 0, 1, 0, 4, 3, 0, 8, 6)

    def test_unit_square(self):
        b = validate_b([(1, 0), (0, 1), (-1, 0), (0, -1)])
        mu = mu_vector(b)
        assert sum(mu) == 2 * compute_stats(b).degree

    def test_zero_row(self):
        b = validate_b([(1, 0), (0, 1), (-1, -1), (0, 0)])
        assert mu_vector(b)[3] == 0

    def test_intrinsic_coordinates_nonnegative_fuzz(self):
        rng = random.Random(52)
        for _ in range(50):
            b = random_b(rng)
            p = build_PB(b)
            mu = mu_vector(b, p)
            for v in p.lattice_points():
                coords = [
                    m - (row[0] * v[1] - row[1] * v[0])
                    for row, m in zip(b.rows, mu)
                ]
                assert all(c >= 0 for c in coords)
                assert sum(coords) == sum(mu)


class TestAffineImages:
    def test_intro_anchor_vertex(self):
        verts = chow_polygon(INTRO)
        # vertex (0,0) carries the monomial a^4*c*e^4*f^3*h^8*i^6
        assert verts[0] == (4, 0, 1, 0, 4, 3, 0, 8, 6)

    def test_coordinate_sums(self):
        d = compute_stats(INTRO).degree
        for v in chow_polygon(INTRO):
            assert sum(v) == 2 * d

    def test_secondary(self):
        d = compute_stats(INTRO).degree
        for cv, sv in zip(chow_polygon(INTRO), secondary_polygon(INTRO)):
            assert all(x + y == d for x, y in zip(cv, sv))

    def test_cubic_newton(self):
        assert set(newton_polygon_DA(CUBIC)) == {
            (2, 0, 0, 2),
            (1, 0, 3, 0),
            (0, 3, 0, 1),
            (0, 2, 2, 0),
        }

    def test_sec4_newton_has_printed_vertices(self):
        verts = set(newton_polygon_DA(SEC4))
        assert (16, 0, 0, 11, 23, 22) in verts
        assert (20, 36, 11, 0, 0, 5) in verts
        assert len(verts) == 6

    def test_symmetric_newton_is_origin(self):
        b = validate_b([(1, 2), (-1, -2), (3, 1), (-3, -1)])
        assert newton_polygon_DA(b) == [(0, 0, 0, 0)]


class TestQB:
    def test_intro_triangle(self):
        q = build_QB(INTRO)
        assert q.vertices == ((0, 0), (2, 2), (0, 2))
        assert q.lattice_point_count() == 6

    def test_sec4_equals_pb(self):
        assert build_QB(SEC4).vertices == build_PB(SEC4).vertices

    def test_symmetric_point(self):
        q = build_QB(validate_b([(1, 2), (-1, -2), (3, 1), (-3, -1)]))
        assert q.is_point

    def test_zero_row_rejected(self):
        with pytest.raises(InvalidConfiguration, match="nonzero"):
            build_QB(validate_b([(1, 0), (0, 1), (-1, -1), (0, 0)]))

    def test_minkowski_decomposition_fuzz(self):
        # edge lengths of the big polygon = collapsed polygon plus, per
        # relevant line, delta copies of the primitive segment
        rng = random.Random(53)
        for _ in range(60):
            b = random_b(rng, nonzero_rows=True)

            def direction_lengths(edges):
                out = {}
                for e in edges:
                    from math import gcd

                    g = gcd(abs(e[0]), abs(e[1]))
                    d = (e[0] // g, e[1] // g)
                    out[d] = out.get(d, 0) + g
                return out

            lp = direction_lengths(build_PB(b).edges())
            q = build_QB(b)
            lq = direction_lengths([] if q.is_point else q.edges())
            for line in relevant_lines(b):
                for d in (line.v, (-line.v[0], -line.v[1])):
                    lq[d] = lq.get(d, 0) + line.delta
            assert lp == {k: v for k, v in lq.items() if v}


class TestCounts:
    def test_intro(self):
        assert boundary_point_count(INTRO) == 12
        assert lattice_point_count(INTRO) == 18

    def test_sec4(self):
        assert lattice_point_count(SEC4) == 40

    def test_unit_square(self):
        assert lattice_point_count(validate_b([(1, 0), (-1, 0), (0, 1), (0, -1)])) == 4

    def test_pick_vs_enumeration_fuzz(self):
        rng = random.Random(54)
        for _ in range(120):
            b = random_b(rng, nmin=3, nmax=7, bound=8)
            p = build_PB(b)
            assert p.lattice_point_count() == lattice_points_oracle(p.vertices)
            assert sorted(p.lattice_points()) == sorted(
                set(p.lattice_points())
            )
            assert len(p.lattice_points()) == p.lattice_point_count()


class TestDegrees:
    def test_intro(self):
        assert degree_via_mu(INTRO) == 13
        assert degree_DA(INTRO) == 10

    def test_sec4(self):
        assert degree_via_mu(SEC4) == 43
        assert degree_DA(SEC4) == 72

    def test_symmetric_zero(self):
        assert degree_DA(validate_b([(1, 2), (-1, -2), (3, 1), (-3, -1)])) == 0


class TestSymmetry:
    def test_intro_not(self):
        assert not is_centrally_symmetric(INTRO)

    def test_pairs(self):
        assert is_centrally_symmetric(validate_b([(1, 2), (-1, -2), (3, 1), (-3, -1)]))

    def test_sec4_not(self):
        assert not is_centrally_symmetric(SEC4)


class TestNewtonHull:
    def test_single_monomial(self):
        ctx = VarContext(["x1", "x2"])
        h = newton_polygon_of(Poly.monomial(ctx, (2, 3), 5))
        assert h.vertices == ((2, 3),)
        assert h.contains((2, 3)) and not h.contains((2, 2))

    def test_square(self):
        ctx = VarContext(["x1", "x2"])
        f = Poly.from_terms(
            ctx, [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]
        )
        h = newton_polygon_of(f)
        assert h.vertex_set() == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_interior_not_vertex(self):
        ctx = VarContext(["x1", "x2"])
        f = Poly.from_terms(
            ctx, [((0, 0), 1), ((2, 0), 1), ((0, 2), 1), ((1, 1), 7)]
        )
        h = newton_polygon_of(f)
        assert h.vertex_set() == {(0, 0), (2, 0), (0, 2)}
        assert h.contains((1, 1)) and not h.contains((2, 2))

    def test_collinear(self):
        ctx = VarContext(["x1", "x2", "x3"])
        f = Poly.from_terms(
            ctx, [((0, 0, 0), 1), ((1, 1, 0), 1), ((3, 3, 0), 2)]
        )
        h = newton_polygon_of(f)
        assert h.vertex_set() == {(0, 0, 0), (3, 3, 0)}
        assert h.contains((2, 2, 0)) and not h.contains((4, 4, 0))
        assert not h.contains((1, 0, 0))


class TestDehomog:
    def test_first_quadrant(self):
        q = dehomog_newton(INTRO)
        assert min(v[0] for v in q.vertices) == 0
        assert min(v[1] for v in q.vertices) == 0

    def test_symmetric_point(self):
        q = dehomog_newton(validate_b([(1, 2), (-1, -2), (3, 1), (-3, -1)]))
        assert q.vertices == ((0, 0),)

    def test_cubic(self):
        assert set(dehomog_newton(CUBIC).vertices) == {(0, 0), (1, 0), (2, 2), (0, 1)}


class TestSvg:
    def test_emit(self):
        svg = polygon_svg(build_PB(INTRO))
        assert svg.startswith("<svg") and svg.endswith("</svg>")
        assert 'stroke="black"' in svg
        # 1 lattice unit = 20 px
        assert 'width="120"' in svg  # 4 wide + 2 padding

    def test_point(self):
        svg = polygon_svg(LatticePolygon(((0, 0),)))
        assert "<circle" in svg
