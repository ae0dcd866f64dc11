"""Shared test utilities: random generators and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from codim2.errors import InvalidConfiguration
from codim2.lattice import compute_stats, is_prime, validate_b
from codim2.poly import Poly, VarContext


def random_poly(rng: random.Random, ctx: VarContext, terms=5, deg=4, coeff=9, laurent=False):
    lo = -deg if laurent else 0
    data = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(lo, deg) for _ in range(ctx.nvars))
        data[exps] = data.get(exps, 0) + rng.randint(-coeff, coeff)
    return Poly.from_terms(ctx, data.items())


def random_nonzero_poly(rng, ctx, **kw):
    while True:
        f = random_poly(rng, ctx, **kw)
        if not f.is_zero():
            return f


def random_b(
    rng: random.Random,
    nmin=4,
    nmax=6,
    bound=3,
    require_prime=False,
    nonzero_rows=False,
    max_degree=None,
):
    """Random valid configuration with all entries inside [-bound, bound]."""
    while True:
        n = rng.randint(nmin, nmax)
        rows = [
            (rng.randint(-bound, bound), rng.randint(-bound, bound))
            for _ in range(n - 1)
        ]
        last = (-sum(r[0] for r in rows), -sum(r[1] for r in rows))
        rows.append(last)
        if abs(last[0]) > bound or abs(last[1]) > bound:
            continue
        if nonzero_rows and any(r == (0, 0) for r in rows):
            continue
        try:
            b = validate_b(rows)
        except InvalidConfiguration:
            continue
        if require_prime and not is_prime(b):
            continue
        if max_degree is not None and compute_stats(b).degree > max_degree:
            continue
        return b


def random_symmetric_prime_b(rng: random.Random, pairs=2, bound=3):
    """Centrally symmetric prime configuration: rows come in (v, -v) pairs."""
    while True:
        vs = []
        for _ in range(pairs):
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if v == (0, 0):
                break
            vs.append(v)
        if len(vs) < pairs:
            continue
        rows = []
        for v in vs:
            rows.extend([v, (-v[0], -v[1])])
        try:
            b = validate_b(rows)
        except InvalidConfiguration:
            continue
        if is_prime(b):
            return b


# -- independent oracles -------------------------------------------------


def schoolbook_mul(f: Poly, g: Poly) -> dict:
    """Quadratic double loop over exponent tuples; no shared code path."""
    out = {}
    for ea, ca in f.terms():
        for eb, cb in g.terms():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def merge_add(f: Poly, g: Poly) -> dict:
    out = {}
    for poly in (f, g):
        for e, c in poly.terms():
            out[e] = out.get(e, 0) + c
    return {k: v for k, v in out.items() if v}


def poly_to_dict(f: Poly) -> dict:
    return {e: c for e, c in f.terms()}


def cofactor_determinant(rows, ctx) -> Poly:
    """Plain Laplace expansion along the first row (recursive, no memo)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Poly.zero(ctx)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sub = cofactor_determinant(minor, ctx)
        term = entry * sub
        total = total + (term if j % 2 == 0 else -term)
    return total


def lattice_points_oracle(vertices) -> int:
    """Brute-force bounding-box count with a local containment test."""
    if len(vertices) == 1:
        return 1
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    n = len(vertices)

    def inside(px, py):
        for k in range(n):
            ax, ay = vertices[k]
            bx, by = vertices[(k + 1) % n]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                return False
        return True

    return sum(
        inside(px, py)
        for px in range(min(xs), max(xs) + 1)
        for py in range(min(ys), max(ys) + 1)
    )


def vertex_coefficient_magnitude(b, vertex_index: int) -> int:
    """Extreme-coefficient magnitude of the discriminant, via the cone product.

    For the polygon vertex between consecutive edge directions, the magnitude
    is prod |det(b_r, b_s)| ** |det(b_r, b_s)| over all index pairs whose cone
    contains both directions, divided by nothing when no relevant lines exist.
    Only valid in that no-relevant-line case; the cone sums must equal the
    degree, which is asserted.
    """
    from codim2.intlinalg import det2
    from codim2.lattice import relevant_lines
    from codim2.polygon import build_PB

    assert not relevant_lines(b)
    edges = build_PB(b).edges()
    m = len(edges)
    # vertex k of the anchored polygon sits between edges k-1 and k
    dir_in = edges[(vertex_index - 1) % m]
    dir_out = edges[vertex_index % m]

    def in_cone(u, w, x) -> bool:
        # x inside the convex cone spanned by u, w (angle < pi)
        d_uw = det2(u, w)
        if d_uw == 0:
            return False
        if d_uw < 0:
            u, w = w, u
        return det2(u, x) >= 0 and det2(x, w) >= 0

    total = 0
    prod = 1
    rows = b.rows
    for r in range(len(rows)):
        for s in range(r + 1, len(rows)):
            if in_cone(rows[r], rows[s], dir_in) and in_cone(rows[r], rows[s], dir_out):
                d = abs(det2(rows[r], rows[s]))
                total += d
                prod *= d**d
    assert total == compute_stats(b).degree
    return prod


def parametrization_point(a_config, values):
    """Exact torus point of the monomial parametrization given by A's columns."""
    pts = []
    for j in range(a_config.n):
        val = Fraction(1)
        for i, row in enumerate(a_config.rows):
            val *= Fraction(values[i]) ** row[j]
        pts.append(val)
    return pts
