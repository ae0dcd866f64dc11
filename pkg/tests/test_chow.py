import json
import random
from fractions import Fraction
from importlib import resources

import pytest

from codim2.chow import (
    bezout_chow_form,
    build_H,
    chow_form,
    line_context,
    validate_bezout_input,
)
from codim2.errors import InvalidConfiguration
from codim2.lattice import compute_stats, gale_dual_a, validate_b
from codim2.poly import Poly, UniPoly, VarContext
from codim2.polygon import chow_polygon, newton_polygon_of

from helpers import parametrization_point, random_b

SQUARE = validate_b([(1, 0), (0, 1), (-1, 0), (0, -1)])
CUBIC = validate_b([(1, 0), (-2, 1), (1, -2), (0, 1)])


def intro():
    return validate_b(
        [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1), (-2, 0), (0, -2), (2, 2)],
        list("abcdefghi"),
    )


class TestBuildH:
    def test_square(self):
        b = SQUARE
        ctx = line_context(b)
        h1, h2 = build_H(b, ctx)
        y = lambda nm: Poly.variable(ctx, nm)
        assert h1 == UniPoly(ctx, [y("x10") - y("x30"), y("x11") - y("x31")])
        assert h2 == UniPoly(ctx, [y("x20") - y("x40"), y("x21") - y("x41")])

    def test_degrees_are_column_sums(self):
        rng = random.Random(60)
        for _ in range(30):
            b = random_b(rng)
            st = compute_stats(b)
            h1, h2 = build_H(b)
            assert h1.degree == st.beta[0]
            assert h2.degree == st.beta[1]

    def test_binomial_rows(self):
        b = validate_b([(2, 0), (-1, 1), (-1, -1)])
        ctx = line_context(b)
        h1, h2 = build_H(b, ctx)
        y0 = UniPoly.linear(ctx, Poly.variable(ctx, 0), Poly.variable(ctx, 1))
        y1 = UniPoly.linear(ctx, Poly.variable(ctx, 2), Poly.variable(ctx, 3))
        y2 = UniPoly.linear(ctx, Poly.variable(ctx, 4), Poly.variable(ctx, 5))
        assert h1 == y0 * y0 - y1 * y2
        assert h2 == y1 - y2


class TestChowForm:
    def test_square_form(self):
        cf = chow_form(SQUARE)
        ctx = cf.poly.ctx
        y = lambda nm: Poly.variable(ctx, nm)
        expected = (y("x10") - y("x30")) * (y("x21") - y("x41")) - (
            y("x11") - y("x31")
        ) * (y("x20") - y("x40"))
        assert cf.poly == expected
        assert cf.degree == 2

    def test_cubic_structure(self):
        cf = chow_form(CUBIC)
        assert cf.degree == 6 == cf.poly.total_degree()
        assert cf.poly.is_homogeneous()

    def test_nonprime_binomial_pair(self):
        # defined for any valid configuration, prime or not
        cf = chow_form(validate_b([(2, 0), (-1, 1), (-1, -1)]))
        assert cf.degree == 4 == cf.poly.total_degree()
        assert not cf.stats.nu

    def test_chow_polytope_theorem_fuzz(self):
        # multidegree hull of the computed form = affine image of the polygon
        rng = random.Random(61)
        for _ in range(12):
            b = random_b(rng, nmin=4, nmax=5, bound=2, max_degree=8)
            cf = chow_form(b)
            ctx = VarContext([f"d{i}" for i in range(b.n)])
            acc = {}
            for exps, c in cf.poly.terms():
                key = cf.pair_degrees(exps)
                acc[key] = acc.get(key, 0) + abs(c)
            image = Poly.from_terms(ctx, acc.items())
            assert newton_polygon_of(image).vertex_set() == set(chow_polygon(b))

    def test_vanishes_on_lines_through_the_variety_fuzz(self):
        rng = random.Random(62)
        for _ in range(10):
            b = random_b(rng, nmin=4, nmax=5, bound=2, require_prime=True, max_degree=8)
            a = gale_dual_a(b)
            cf = chow_form(b)
            for _ in range(3):
                params = [
                    Fraction(rng.randint(1, 9), rng.randint(1, 9))
                    for _ in range(b.n - 2)
                ]
                point = parametrization_point(a, params)
                direction = [Fraction(rng.randint(-9, 9)) for _ in range(b.n)]
                values = []
                for x, d in zip(point, direction):
                    values.extend((x, d))
                assert cf.poly.evaluate(values) == 0

    def test_division_always_exact_fuzz(self):
        rng = random.Random(63)
        for _ in range(25):
            b = random_b(rng, nmin=4, nmax=6, bound=2, max_degree=10)
            cf = chow_form(b)  # raises internally if a bracket fails to divide
            assert cf.poly.leading_coefficient() > 0


class TestBezout:
    def _intro_monomials(self):
        with resources.files("codim2.fixtures").joinpath("intro_bezout.json").open() as f:
            return json.load(f)["monomials"]

    def test_validation_degree_pattern(self):
        b = intro()
        monos = self._intro_monomials()
        bad = monos[3:] + monos[:3]  # degree-1 row on top: d1 < d4
        with pytest.raises(InvalidConfiguration, match="restricted degree pattern"):
            validate_bezout_input(b, bad)

    def test_validation_homogeneity(self):
        b = intro()
        monos = self._intro_monomials()
        bad = [monos[3]] + monos[1:3] + [monos[0]] + monos[4:]
        with pytest.raises(InvalidConfiguration, match="homogeneity"):
            validate_bezout_input(b, bad)

    def test_validation_lattice_membership(self):
        b = intro()
        monos = [list(m) for m in self._intro_monomials()]
        monos[0][0] += 1
        monos[3][0] += 1  # keeps degrees balanced but leaves the lattice
        with pytest.raises(InvalidConfiguration):
            validate_bezout_input(b, monos)

    def test_cubic_agrees(self):
        # 2x2 minors of [[x1,x2,x3],[x2,x3,x4]] present the twisted cubic
        m = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]
        assert bezout_chow_form(CUBIC, m).poly == chow_form(CUBIC).poly

    def test_intro_delta(self):
        binput = validate_bezout_input(intro(), self._intro_monomials())
        assert binput.delta == 4
        assert binput.degrees == (3, 3, 3, 1, 1, 1)
