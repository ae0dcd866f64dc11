"""The Chow form of a codimension-2 lattice presentation.

The generic line (y_{11} + t*y_{12}, ..., y_{n1} + t*y_{n2}) is substituted
into the two column binomials of B; the Sylvester resultant in t, divided by
the predicted powers of line brackets, is the Chow form.  For Cohen-Macaulay
presentations given by a 2 x 3 monomial matrix there is also a division-free
determinantal route through a Bezout matrix; both are exposed here and must
agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InexactDivision, InternalIdentityError, InvalidConfiguration
from .intlinalg import solve_rational
from .lattice import BConfig, ConfigStats, compute_stats
from .poly import (
    Poly,
    PolyMatrix,
    UniPoly,
    VarContext,
    determinant,
    exact_divide,
    product_of_linears,
)
from .polygon import mu_vector


def line_context(b: BConfig) -> VarContext:
    """Context of the 2n line coefficients, two per row of B."""
    names = []
    for nm in b.var_names:
        names.extend((f"{nm}0", f"{nm}1"))
    return VarContext(names)


@dataclass(frozen=True)
class ChowForm:
    """Sign-normalized Chow form with its degree bookkeeping."""

    poly: Poly
    degree: int
    stats: ConfigStats
    mu: tuple[int, ...]
    b: BConfig

    def __post_init__(self):
        f = self.poly
        if f.is_zero():
            raise InternalIdentityError("Chow form vanished identically")
        if f.leading_coefficient() < 0:
            raise InternalIdentityError("Chow form not sign-normalized")
        if not f.is_homogeneous() or f.total_degree() != self.degree:
            raise InternalIdentityError(
                f"Chow form is not homogeneous of degree {self.degree}"
            )

    def pair_degrees(self, exps: Sequence[int]) -> tuple[int, ...]:
        """Collapse a term's exponent vector to one degree per coefficient pair."""
        return tuple(
            exps[2 * i] + exps[2 * i + 1] for i in range(len(self.b.rows))
        )


def build_H(b: BConfig, ctx: VarContext | None = None) -> tuple[UniPoly, UniPoly]:
    """The two column polynomials in t whose resultant carries the Chow form."""
    if ctx is None:
        ctx = line_context(b)
    out = []
    for ell in range(2):
        pos = []
        neg = []
        for i, row in enumerate(b.rows):
            e = row[ell]
            if e == 0:
                continue
            c0 = Poly.variable(ctx, 2 * i)
            c1 = Poly.variable(ctx, 2 * i + 1)
            (pos if e > 0 else neg).append((c0, c1, abs(e)))
        out.append(product_of_linears(ctx, pos) - product_of_linears(ctx, neg))
    return out[0], out[1]


def bracket(ctx: VarContext, r: int, s: int) -> Poly:
    """Dual Pluecker coordinate of the line for rows r < s (0-based)."""
    t1 = Poly.variable(ctx, 2 * r) * Poly.variable(ctx, 2 * s + 1)
    t2 = Poly.variable(ctx, 2 * r + 1) * Poly.variable(ctx, 2 * s)
    return t1 - t2


def _normalized(f: Poly) -> Poly:
    return -f if f.leading_coefficient() < 0 else f


def chow_form(b: BConfig) -> ChowForm:
    """Resultant-quotient construction of the Chow form."""
    stats = compute_stats(b)
    ctx = line_context(b)
    h1, h2 = build_H(b, ctx)
    res = sylvester_resultant_formal(h1, h2, stats.beta)
    # Divide the bracket powers out, smallest multiplicity first.
    for (r, s), power in sorted(stats.nu.items(), key=lambda kv: kv[1]):
        br = bracket(ctx, r, s)
        for _ in range(power):
            try:
                res = exact_divide(res, br)
            except InexactDivision as exc:
                raise InternalIdentityError(
                    f"bracket [{r + 1},{s + 1}] does not divide the resultant"
                ) from exc
    mu = mu_vector(b)
    return ChowForm(
        poly=_normalized(res),
        degree=2 * stats.degree,
        stats=stats,
        mu=mu,
        b=b,
    )


def sylvester_resultant_formal(
    f: UniPoly, g: UniPoly, formal_degrees: tuple[int, int]
) -> Poly:
    from .poly import sylvester_resultant

    return sylvester_resultant(f, g, formal_degrees[0], formal_degrees[1])


# -- Bezout determinantal route ----------------------------------------


@dataclass(frozen=True)
class BezoutInput:
    """A 2 x 3 monomial presentation of a Cohen-Macaulay lattice ideal.

    monomials holds the six exponent vectors row-major (m1, m2, m3 on top);
    degrees are their total degrees and delta = d1 + d4 is the size of the
    extracted coefficient matrix.
    """

    monomials: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    delta: int


def validate_bezout_input(
    b: BConfig, monomials: Sequence[Sequence[int]]
) -> BezoutInput:
    monos = tuple(tuple(int(e) for e in m) for m in monomials)
    if len(monos) != 6 or any(len(m) != b.n for m in monos):
        raise InvalidConfiguration(
            "the presentation needs six exponent vectors with one entry per row of B"
        )
    if any(e < 0 for m in monos for e in m):
        raise InvalidConfiguration("presentation monomials must be polynomial")
    d = tuple(sum(m) for m in monos)
    if not (d[0] + d[4] == d[1] + d[3] and d[0] + d[5] == d[2] + d[3]):
        raise InvalidConfiguration(
            "degrees violate homogeneity: need d1+d5 = d2+d4 and d1+d6 = d3+d4"
        )
    if not (d[0] == d[1] == d[2] and d[3] == d[4] == d[5] and d[0] >= d[3]):
        raise InvalidConfiguration(
            "restricted degree pattern required: d1 = d2 = d3 >= d4 = d5 = d6"
        )
    # The three 2x2-minor binomials must have exponent differences inside the
    # column lattice of B.
    bt = [[b.rows[i][0] for i in range(b.n)], [b.rows[i][1] for i in range(b.n)]]
    cols = list(zip(*b.rows))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        diff = [
            monos[i][k] + monos[j + 3][k] - monos[j][k] - monos[i + 3][k]
            for k in range(b.n)
        ]
        mat = [[cols[0][k], cols[1][k]] for k in range(b.n)]
        sol = solve_rational(mat, diff)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise InvalidConfiguration(
                f"minor binomial ({i + 1},{j + 1}) is not supported on the column lattice"
            )
    return BezoutInput(monos, d, d[0] + d[3])


def _bezout_working_context(b: BConfig) -> tuple[VarContext, int, int, int]:
    names = []
    for nm in b.var_names:
        names.extend((f"{nm}0", f"{nm}1"))
    names.extend(("t", "u", "v"))
    ctx = VarContext(names)
    base = 2 * b.n
    return ctx, base, base + 1, base + 2


def _monomial_of_lines(ctx: VarContext, b: BConfig, exps: Sequence[int], tvar: int) -> Poly:
    """Image of x^exps under x_i -> (y_i0 + y_i1 * t_or_v)."""
    out = Poly.const(ctx, 1)
    for i, e in enumerate(exps):
        if not e:
            continue
        lin = Poly.variable(ctx, 2 * i) + Poly.variable(ctx, 2 * i + 1) * Poly.variable(ctx, tvar)
        out = out * lin**e
    return out


def bezout_chow_form(b: BConfig, presentation: Sequence[Sequence[int]] | BezoutInput) -> ChowForm:
    """Chow form as the determinant of the Bezout coefficient matrix."""
    binput = (
        presentation
        if isinstance(presentation, BezoutInput)
        else validate_bezout_input(b, presentation)
    )
    ctx, t, u, v = _bezout_working_context(b)
    d1, d4 = binput.degrees[0], binput.degrees[3]
    delta = binput.delta
    top_t = [_monomial_of_lines(ctx, b, m, t) for m in binput.monomials[:3]]
    bot_t = [_monomial_of_lines(ctx, b, m, t) for m in binput.monomials[3:]]
    top_v = [_monomial_of_lines(ctx, b, m, v) for m in binput.monomials[:3]]
    bot_v = [_monomial_of_lines(ctx, b, m, v) for m in binput.monomials[3:]]
    tv = Poly.variable(ctx, t) - Poly.variable(ctx, v)
    uvar = Poly.variable(ctx, u)
    # Column operations split off the (s-u)(t-v) factor before expanding:
    # col1 = m[t] + m'[t]s, col2 = m[t] + m'[t]u, col3 = m[v] + m'[v]u.
    colA = bot_t
    colB = [
        exact_divide(top_t[i] - top_v[i] + uvar * (bot_t[i] - bot_v[i]), tv)
        for i in range(3)
    ]
    colC = [top_v[i] + uvar * bot_v[i] for i in range(3)]
    rows = [[colA[i], colB[i], colC[i]] for i in range(3)]
    bez = determinant(PolyMatrix(ctx, rows), method="laplace")

    # Sort the Bezout polynomial into the delta x delta coefficient matrix
    # against the basis (1..v^(d1-1), u, uv..uv^(d4-1)) x (1, t, .., t^(delta-1)).
    yctx = line_context(b)
    zero = Poly.zero(yctx)
    mat = [[zero for _ in range(delta)] for _ in range(delta)]
    nvars = ctx.nvars
    for exps, coeff in bez.terms():
        et, eu, ev = exps[t], exps[u], exps[v]
        if eu not in (0, 1) or et >= delta:
            raise InternalIdentityError("unexpected auxiliary exponent in the Bezout polynomial")
        if eu == 0:
            if ev >= d1:
                raise InternalIdentityError("v-degree exceeds the top block")
            row = ev
        else:
            if ev >= d4:
                raise InternalIdentityError("uv-degree exceeds the bottom block")
            row = d1 + ev
        ypart = exps[: 2 * b.n]
        mat[row][et] = mat[row][et] + Poly.monomial(yctx, ypart, coeff)
    det = determinant(PolyMatrix(yctx, mat))
    if det.is_zero():
        raise InternalIdentityError("Bezout determinant vanished")
    stats = compute_stats(b)
    return ChowForm(
        poly=_normalized(det),
        degree=2 * stats.degree,
        stats=stats,
        mu=mu_vector(b),
        b=b,
    )
