"""Full discriminants, facet binomials, and the dual-variety discriminant.

Specializing the generic line coefficients to b_il * x_i turns the Chow form
into the dual full discriminant; the reciprocal-and-clear image of that is
the full discriminant, whose factorization into facet binomials and one copy
of the dual-variety discriminant is computed and verified exactly.  A second,
independent pipeline implicitizes the Horn parametrization of the
discriminant curve and lifts it back; both must agree.

The expensive route through the fully symbolic Chow form is avoided: line
coefficients of rows that do not sit on an off-axis relevant line are
specialized before the elimination, which keeps every intermediate object
small while producing the identical polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chow import ChowForm
from .errors import (
    InexactDivision,
    InternalIdentityError,
    InvalidConfiguration,
    NotPrime,
    PreconditionViolated,
)
from .intlinalg import det2
from .lattice import (
    BConfig,
    RelevantLine,
    compute_stats,
    is_prime,
    relevant_lines,
)
from .poly import (
    Poly,
    UniPoly,
    VarContext,
    exact_divide,
    product_of_linears,
    substitute,
    sylvester_resultant,
)
from .polygon import degree_DA, is_centrally_symmetric


def x_context(b: BConfig) -> VarContext:
    return VarContext(b.var_names)


def _normalized(f: Poly) -> Poly:
    return -f if f.leading_coefficient() < 0 else f


# -- dual full discriminant ---------------------------------------------


def specialized_h(b: BConfig, ctx: VarContext | None = None) -> tuple[UniPoly, UniPoly]:
    """The column polynomials with line coefficients specialized to b_il*x_i.

    Leading coefficients may vanish; the formal degrees are the positive
    column sums of B.
    """
    if ctx is None:
        ctx = x_context(b)
    out = []
    for ell in range(2):
        pos, neg = [], []
        for i, row in enumerate(b.rows):
            e = row[ell]
            if e == 0:
                continue
            xi = Poly.variable(ctx, i)
            c0 = xi * row[0]
            c1 = xi * row[1]
            (pos if e > 0 else neg).append((c0, c1, abs(e)))
        out.append(product_of_linears(ctx, pos) - product_of_linears(ctx, neg))
    return out[0], out[1]


def _eval_route(b: BConfig) -> Poly:
    """Ẽ_B without the symbolic Chow form.

    Rows sitting on an off-axis relevant line are deformed by one auxiliary
    variable (their second coordinate gains +eps); every predicted bracket
    divisor then stays a nonzero monomial or binomial, the divisions happen in
    the deformed ring, and eps = 0 recovers the exact specialization.
    """
    stats = compute_stats(b)
    lines = relevant_lines(b)
    deformed = {
        i for line in lines if not line.on_axis for i in line.member_indices
    }
    if deformed:
        eps_name = "eps"
        while eps_name in b.var_names:
            eps_name += "_"
        ctx = VarContext(list(b.var_names) + [eps_name])
        eps = Poly.variable(ctx, ctx.nvars - 1)
        eps_index = ctx.nvars - 1
    else:
        ctx = x_context(b)
        eps = None
        eps_index = -1

    def coeff_pair(i: int) -> tuple[Poly, Poly]:
        row = b.rows[i]
        xi = Poly.variable(ctx, i)
        c1 = xi * row[1]
        if i in deformed:
            c1 = c1 + xi * eps
        return xi * row[0], c1

    hs = []
    for ell in range(2):
        pos, neg = [], []
        for i, row in enumerate(b.rows):
            e = row[ell]
            if e == 0:
                continue
            c0, c1 = coeff_pair(i)
            (pos if e > 0 else neg).append((c0, c1, abs(e)))
        hs.append(product_of_linears(ctx, pos) - product_of_linears(ctx, neg))
    res = sylvester_resultant(hs[0], hs[1], stats.beta[0], stats.beta[1])

    # Bracket images: x_r*x_s times (det + eps-correction).  Same-line pairs
    # have det = 0 but a nonzero eps coefficient, so every divisor survives.
    int_factor = 1
    mono_exps = [0] * ctx.nvars
    binomial_divisors: list[tuple[Poly, int]] = []
    for (r, s), power in sorted(stats.nu.items(), key=lambda kv: kv[1]):
        mono_exps[r] += power
        mono_exps[s] += power
        d = det2(b.rows[r], b.rows[s])
        c_eps = (b.rows[r][0] if s in deformed else 0) - (
            b.rows[s][0] if r in deformed else 0
        )
        if c_eps == 0:
            if d == 0:
                raise InternalIdentityError(
                    "vanishing bracket with no deformation term"
                )
            int_factor *= d**power
        elif d == 0:
            int_factor *= c_eps**power
            mono_exps[eps_index] += power
        else:
            binomial_divisors.append((Poly.const(ctx, d) + eps * c_eps, power))
    if any(mono_exps):
        res = exact_divide(res, Poly.monomial(ctx, mono_exps))
    if int_factor != 1:
        res = exact_divide(res, Poly.const(ctx, int_factor))
    for div, power in binomial_divisors:
        for _ in range(power):
            res = exact_divide(res, div)

    if deformed:
        xctx = x_context(b)
        unit = lambda i: tuple(1 if j == i else 0 for j in range(xctx.nvars))
        images = {i: (1, unit(i)) for i in range(b.n)}
        images[eps_index] = (0, unit(0))
        res = substitute(res, images, xctx)
    return res


def dual_full_discriminant(b: BConfig, chow: ChowForm | None = None) -> Poly:
    """Specialize the Chow form along y_il -> b_il * x_i.

    The result is sign-normalized (positive graded-lex leading coefficient in
    the x variables) so that the cheap elimination route and the literal
    substitution route produce the identical polynomial.
    """
    if chow is not None:
        xctx = x_context(b)
        images = {}
        for i, row in enumerate(b.rows):
            unit = tuple(1 if j == i else 0 for j in range(xctx.nvars))
            images[2 * i] = (row[0], unit)
            images[2 * i + 1] = (row[1], unit)
        img = substitute(chow.poly, images, xctx)
        return _normalized(img)
    return _normalized(_eval_route(b))


def fast_dual_full_discriminant(b: BConfig) -> Poly:
    """Single-resultant route, valid only without off-axis relevant lines."""
    for line in relevant_lines(b):
        if not line.on_axis:
            raise PreconditionViolated(
                f"relevant line {line.v} is not a coordinate axis; "
                "the single-resultant route does not apply"
            )
    return _normalized(_eval_route(b))


def full_discriminant(b: BConfig, chow: ChowForm | None = None) -> Poly:
    """Reciprocity image of the dual full discriminant (needs a Gale dual)."""
    if not is_prime(b):
        raise NotPrime(
            "rows of B do not generate the full planar lattice; "
            "the full discriminant is defined only for prime presentations"
        )
    dual = dual_full_discriminant(b, chow)
    return reciprocity_image(b, dual)


def reciprocity_image(b: BConfig, f: Poly) -> Poly:
    """Map g(x) to (x_1...x_n)^degree * g(1/x); exact involution on our pairs."""
    d = compute_stats(b).degree
    ctx = f.ctx
    out = f.reciprocal().mul_monomial((d,) * ctx.nvars)
    if any(e < 0 for e in out.min_exponents()):
        raise InternalIdentityError("reciprocity image left negative exponents")
    return out


# -- residual factors and the discriminant ------------------------------


@dataclass(frozen=True)
class LineFactorReport:
    """Trial-division record for one relevant line and one column polynomial."""

    v: tuple[int, int]
    column: int
    formula_exponent: int
    actual_exponent: int


def residual_factors(
    b: BConfig,
) -> tuple[UniPoly, UniPoly, list[LineFactorReport]]:
    """Divide every relevant-line linear factor out of the specialized columns.

    The exponent of (v1 + v2*t) in column l is delta_v * |v_l|; trial division
    verifies this and the verified value wins on any mismatch.
    """
    b.require_nonzero_rows("the residual factorization")
    ctx = x_context(b)
    h1, h2 = specialized_h(b, ctx)
    reports: list[LineFactorReport] = []
    hs = [h1, h2]
    for line in relevant_lines(b):
        v1, v2 = line.v
        if v2 == 0:
            continue  # constant factor; nothing to divide in t
        for ell in range(2):
            expected = line.delta * abs(line.v[ell])
            actual = 0
            while True:
                try:
                    hs[ell] = hs[ell].divide_linear(v1, v2)
                except InexactDivision:
                    break
                actual += 1
            reports.append(
                LineFactorReport(line.v, ell + 1, expected, actual)
            )
    return hs[0], hs[1], reports


def facet_binomial(b: BConfig, line: RelevantLine) -> Poly:
    """Two-term codimension-one discriminant attached to a relevant line."""
    b.require_nonzero_rows("facet binomials")
    ctx = x_context(b)
    pos_coeff = neg_coeff = 1
    pos_exps = [0] * b.n
    neg_exps = [0] * b.n
    for i, row in enumerate(b.rows):
        d = det2(row, line.v)
        if d > 0:
            pos_coeff *= d**d
            pos_exps[i] = d
        elif d < 0:
            neg_coeff *= d ** (-d)
            neg_exps[i] = -d
    return Poly.monomial(ctx, pos_exps, neg_coeff) - Poly.monomial(
        ctx, neg_exps, pos_coeff
    )


@dataclass(frozen=True)
class DiscriminantBundle:
    """Everything the factorization theorem produces, with verified glue.

    e_full = nu_prime * x^u_prime * d_a * prod D_v^delta_v holds exactly, and
    d_a = (1/nu) * x^u * residual_resultant(1/x).  nu_prime is an exact
    rational: with the facet binomials normalized as displayed (coefficient
    products, not primitive parts), the constant has a denominator whenever a
    facet content enters the full discriminant at lower multiplicity.
    """

    b: BConfig
    e_full: Poly
    e_dual: Poly
    d_a: Poly
    facets: tuple[tuple[RelevantLine, Poly, int], ...]
    nu: int
    u: tuple[int, ...]
    nu_prime: Fraction
    u_prime: tuple[int, ...]
    line_reports: tuple[LineFactorReport, ...]

    @property
    def degree(self) -> int:
        return self.d_a.total_degree()


def a_discriminant(b: BConfig, chow: ChowForm | None = None) -> DiscriminantBundle:
    """Residual-resultant pipeline for the dual-variety discriminant.

    Computes the discriminant, the facet binomials, and the normalization
    constants, then verifies the factorization of the full discriminant
    exactly.
    """
    b.require_nonzero_rows("the discriminant")
    if not is_prime(b):
        raise NotPrime(
            "rows of B do not generate the full planar lattice; "
            "no dual-variety discriminant is defined"
        )
    ctx = x_context(b)
    lines = relevant_lines(b)
    facets = tuple(
        (line, facet_binomial(b, line), line.delta) for line in lines
    )

    if is_centrally_symmetric(b):
        d_a = Poly.const(ctx, 1)
        nu_int = 1
        u = (0,) * b.n
        reports: tuple[LineFactorReport, ...] = ()
    else:
        p1, p2, reps = residual_factors(b)
        reports = tuple(reps)
        r_b = sylvester_resultant(p1, p2)
        if r_b.is_zero():
            raise InternalIdentityError("residual resultant vanished")
        lau = r_b.reciprocal()
        sign, content, mono, prim = lau.content_decomposition()
        d_a = prim
        nu_int = sign * content
        u = tuple(-m for m in mono)

    e_dual = dual_full_discriminant(b, chow)
    if any(e != 0 for e in e_dual.min_exponents()):
        raise InternalIdentityError("dual full discriminant has a monomial factor")
    e_full = reciprocity_image(b, e_dual)

    # Divide by primitive parts (exact whenever the factorization holds) and
    # account the facet contents into the rational constant.
    prod = d_a
    content_product = 1
    for _, dv, delta in facets:
        sign, content, mono, prim = dv.content_decomposition()
        prod = prod * prim.mul_monomial(mono) ** delta
        content_product *= (sign * content) ** delta
    try:
        quotient = exact_divide(e_full, prod)
    except InexactDivision as exc:
        raise InternalIdentityError(
            "full discriminant is not divisible by its predicted factors"
        ) from exc
    if quotient.num_terms != 1:
        raise InternalIdentityError(
            "residue of the full discriminant factorization is not a monomial"
        )
    (u_prime, coeff), = quotient.terms()
    nu_prime = Fraction(coeff, content_product)

    if d_a.total_degree() != degree_DA(b):
        raise InternalIdentityError(
            "discriminant degree disagrees with the Newton polygon prediction"
        )
    return DiscriminantBundle(
        b=b,
        e_full=e_full,
        e_dual=e_dual,
        d_a=d_a,
        facets=facets,
        nu=nu_int,
        u=u,
        nu_prime=nu_prime,
        u_prime=u_prime,
        line_reports=reports,
    )


# -- Horn parametrization ------------------------------------------------

FactorList = tuple[tuple[tuple[int, int], int], ...]


@dataclass(frozen=True)
class HornCurve:
    """Factored parametrization of the discriminant curve and its equation.

    numerators[l] and denominators[l] hold (linear factor (b1, b2), power)
    pairs for coordinate l+1; reduced_* are the same after cancelling the
    relevant-line common factors.  implicit is the primitive irreducible
    equation of the curve in the plane coordinates (w1, w2).
    """

    numerators: tuple[FactorList, FactorList]
    denominators: tuple[FactorList, FactorList]
    reduced_numerators: tuple[FactorList, FactorList]
    reduced_denominators: tuple[FactorList, FactorList]
    implicit: Poly


def _horn_factor_lists(b: BConfig) -> tuple[list, list]:
    nums = [[], []]
    dens = [[], []]
    for row in b.rows:
        for ell in range(2):
            e = row[ell]
            if e > 0:
                nums[ell].append((row, e))
            elif e < 0:
                dens[ell].append((row, -e))
    return nums, dens


def _reduce_horn(b: BConfig, nums, dens):
    """Cancel the shared relevant-line linear factors from each coordinate.

    Working representation: an integer constant together with exponents on
    lex-positive primitive directions, so antiparallel factors merge.
    """

    def normalize(factors):
        const = 1
        dirs: dict[tuple[int, int], int] = {}
        for (b1, b2), e in factors:
            g = math.gcd(abs(b1), abs(b2))
            p = (b1 // g, b2 // g)
            lam = g
            if p < (0, 0):
                p = (-p[0], -p[1])
                lam = -lam
            const *= lam**e
            dirs[p] = dirs.get(p, 0) + e
        return const, dirs

    out_n, out_d = [], []
    for ell in range(2):
        cn, dn = normalize(nums[ell])
        cd, dd = normalize(dens[ell])
        for p in set(dn) & set(dd):
            k = min(dn[p], dd[p])
            dn[p] -= k
            dd[p] -= k
        out_n.append((cn, {p: e for p, e in dn.items() if e}))
        out_d.append((cd, {p: e for p, e in dd.items() if e}))
    return out_n, out_d


def horn_implicitize(b: BConfig, bundle: DiscriminantBundle | None = None) -> HornCurve:
    """Implicitize the coordinatewise product-of-linear-forms parametrization.

    The implicit plane curve, lifted through the monomial substitution
    w_l -> prod x_i^{b_il}, must reproduce the discriminant from the residual
    pipeline exactly; a mismatch raises.
    """
    b.require_nonzero_rows("the Horn parametrization")
    if bundle is None:
        bundle = a_discriminant(b)
    nums_raw, dens_raw = _horn_factor_lists(b)
    red_n, red_d = _reduce_horn(b, nums_raw, dens_raw)

    wctx = VarContext(("w1", "w2"))
    w = [Poly.variable(wctx, 0), Poly.variable(wctx, 1)]

    def expand(const: int, dirs: dict[tuple[int, int], int], scale: Poly) -> UniPoly:
        ext = product_of_linears(
            wctx,
            [
                (Poly.const(wctx, p[0]), Poly.const(wctx, p[1]), e)
                for p, e in dirs.items()
            ],
        )
        return ext.scale(scale * const)

    f = [
        expand(*red_d[ell], scale=w[ell]) - expand(*red_n[ell], scale=Poly.const(wctx, 1))
        for ell in range(2)
    ]
    if f[0].degree <= 0 and f[1].degree <= 0:
        implicit = Poly.const(wctx, 1)
    else:
        res = sylvester_resultant(f[0], f[1])
        if res.is_zero():
            raise InternalIdentityError("Horn implicitization resultant vanished")
        _, _, _, implicit = res.content_decomposition()

    # Lift back to the x variables and compare with the residual pipeline.
    if implicit == 1:
        lifted = Poly.const(x_context(b), 1)
    else:
        xctx = x_context(b)
        images = {
            0: (1, tuple(r[0] for r in b.rows)),
            1: (1, tuple(r[1] for r in b.rows)),
        }
        lifted_raw = substitute(implicit, images, xctx)
        _, _, _, lifted = lifted_raw.content_decomposition()
    if lifted != bundle.d_a:
        raise InternalIdentityError(
            "Horn-implicitized discriminant disagrees with the residual pipeline"
        )

    def freeze(factors) -> FactorList:
        return tuple(((f1, f2), e) for (f1, f2), e in factors)

    def freeze_reduced(const_dirs) -> FactorList:
        const, dirs = const_dirs
        out = [((p[0], p[1]), e) for p, e in sorted(dirs.items())]
        if const != 1 or not out:
            out.insert(0, ((const, 0), 1))
        return tuple(out)

    return HornCurve(
        numerators=(freeze(nums_raw[0]), freeze(nums_raw[1])),
        denominators=(freeze(dens_raw[0]), freeze(dens_raw[1])),
        reduced_numerators=(freeze_reduced(red_n[0]), freeze_reduced(red_n[1])),
        reduced_denominators=(freeze_reduced(red_d[0]), freeze_reduced(red_d[1])),
        implicit=implicit,
    )


def horn_curve_point(b: BConfig, t: object) -> list:
    """Exact point x* = (b_i1 + b_i2 * t) whose coefficient vector kills D_A.

    Raises if t hits a root of one of the linear forms.
    """
    pt = []
    for row in b.rows:
        val = row[0] + row[1] * t
        if val == 0:
            raise InvalidConfiguration("parameter value hits a linear factor root")
        pt.append(val)
    return pt
