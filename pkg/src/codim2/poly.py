"""Exact sparse multivariate Laurent polynomials over arbitrary-precision integers.

A polynomial is a finite map from monomials to nonzero integer coefficients.
Monomials are exponent vectors packed into a single Python integer, one
32-bit field per variable plus a leading total-degree field, each biased by
+2**16 so that Laurent (negative) exponents are representable.  Because the
total degree occupies the most significant field and the variables follow in
context order, comparing two packed keys as plain integers is exactly the
graded lexicographic comparison of the monomials; sorting keys descending
yields the canonical term order used for serialization.

All values are immutable after construction and all operations are pure
functions, so shared inputs are safe to use concurrently.
"""

from __future__ import annotations

import heapq
import json
import math
import re
from typing import Iterable, Iterator, Sequence

from . import cancel
from .errors import (
    ContextMismatch,
    DegenerateResultant,
    InexactDivision,
    ParseError,
    UnsupportedSubstitution,
)

_FIELD_BITS = 32
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_BIAS = 1 << 16
# Exponents must keep every packed field inside [0, 2**32); this bound leaves
# room for the sums formed by products of many monomials.
_MAX_ABS_EXPONENT = (1 << 30) - 1

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class VarContext:
    """An ordered, immutable list of variable names fixing the term order."""

    __slots__ = ("names", "index", "nvars", "zero_key", "_shifts")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.nvars = len(names)
        self.index = {nm: i for i, nm in enumerate(names)}
        # field 0 (most significant) = biased total degree, then one field per
        # variable in context order.
        self._shifts = tuple(
            _FIELD_BITS * (self.nvars - i) for i in range(self.nvars + 1)
        )
        self.zero_key = self.pack((0,) * self.nvars)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarContext({list(self.names)!r})"

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.nvars:
            raise ValueError(
                f"expected {self.nvars} exponents, got {len(exponents)}"
            )
        total = 0
        key = 0
        for shift, e in zip(self._shifts[1:], exponents):
            if abs(e) > _MAX_ABS_EXPONENT:
                raise ValueError(f"exponent {e} out of packable range")
            total += e
            key |= (e + _BIAS) << shift
        return key | ((total + _BIAS) << self._shifts[0])

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple(
            ((key >> shift) & _FIELD_MASK) - _BIAS for shift in self._shifts[1:]
        )

    def total_degree_of(self, key: int) -> int:
        return ((key >> self._shifts[0]) & _FIELD_MASK) - _BIAS

    def exponent_of(self, key: int, var: int) -> int:
        return ((key >> self._shifts[1 + var]) & _FIELD_MASK) - _BIAS

    def mul_keys(self, k1: int, k2: int) -> int:
        return k1 + k2 - self.zero_key

    def div_keys(self, k1: int, k2: int) -> int:
        # Valid whenever the resulting exponents stay above the bias floor;
        # callers that require polynomiality must check key_divides first.
        return k1 - k2 + self.zero_key

    def pow_key(self, key: int, e: int) -> int:
        return e * key - (e - 1) * self.zero_key

    def key_divides(self, k2: int, k1: int) -> bool:
        """True iff monomial k2 divides k1 with nonnegative exponent quotient."""
        diff = k1 - k2 + self.zero_key
        if diff < 0:
            return False
        for shift in self._shifts[1:]:
            if ((diff >> shift) & _FIELD_MASK) < _BIAS:
                return False
        return True

    def variable_key(self, var: int, power: int = 1) -> int:
        exps = [0] * self.nvars
        exps[var] = power
        return self.pack(exps)


class Monomial:
    """Exponent vector bound to a context; mostly a reporting convenience."""

    __slots__ = ("exponents", "ctx")

    def __init__(self, ctx: VarContext, exponents: Sequence[int]):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != ctx.nvars:
            raise ValueError("exponent vector length does not match context")
        self.exponents = exponents
        self.ctx = ctx

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Monomial)
            and self.ctx == other.ctx
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash((self.ctx.names, self.exponents))

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self.ctx, self.exponents) or '1'})"


class Poly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("ctx", "_t")

    def __init__(self, ctx: VarContext, terms: dict[int, int], _trusted=False):
        self.ctx = ctx
        if _trusted:
            self._t = terms
        else:
            self._t = {k: c for k, c in terms.items() if c}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "Poly":
        return cls(ctx, {}, _trusted=True)

    @classmethod
    def const(cls, ctx: VarContext, c: int) -> "Poly":
        c = int(c)
        return cls(ctx, {ctx.zero_key: c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, ctx: VarContext, var: int | str, power: int = 1) -> "Poly":
        if isinstance(var, str):
            var = ctx.index[var]
        return cls(ctx, {ctx.variable_key(var, power): 1}, _trusted=True)

    @classmethod
    def monomial(cls, ctx: VarContext, exponents: Sequence[int], coeff: int = 1) -> "Poly":
        coeff = int(coeff)
        if not coeff:
            return cls.zero(ctx)
        return cls(ctx, {ctx.pack(exponents): coeff}, _trusted=True)

    @classmethod
    def from_terms(cls, ctx: VarContext, terms: Iterable[tuple[Sequence[int], int]]) -> "Poly":
        acc: dict[int, int] = {}
        for exps, c in terms:
            k = ctx.pack(exps)
            acc[k] = acc.get(k, 0) + int(c)
        return cls(ctx, acc)

    # -- inspection ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def num_terms(self) -> int:
        return len(self._t)

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Terms in canonical order: graded lex descending."""
        unpack = self.ctx.unpack
        for k in sorted(self._t, reverse=True):
            yield unpack(k), self._t[k]

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return self.ctx.unpack(k), self._t[k]

    def leading_coefficient(self) -> int:
        if not self._t:
            return 0
        return self._t[max(self._t)]

    def total_degree(self) -> int:
        """Maximum total degree over the support (zero polynomial -> 0)."""
        if not self._t:
            return 0
        tdeg = self.ctx.total_degree_of
        return max(tdeg(k) for k in self._t)

    def is_homogeneous(self) -> bool:
        if not self._t:
            return True
        tdeg = self.ctx.total_degree_of
        it = iter(self._t)
        d = tdeg(next(it))
        return all(tdeg(k) == d for k in it)

    def degree_in_vars(self, vars: Sequence[int]) -> int:
        """Maximum combined exponent of the given variables over the support."""
        if not self._t:
            return 0
        exp = self.ctx.exponent_of
        return max(sum(exp(k, v) for v in vars) for k in self._t)

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent over the support (requires f != 0)."""
        if not self._t:
            raise ValueError("zero polynomial")
        exp = self.ctx.exponent_of
        return tuple(
            min(exp(k, v) for k in self._t) for v in range(self.ctx.nvars)
        )

    def support(self) -> list[tuple[int, ...]]:
        unpack = self.ctx.unpack
        return [unpack(k) for k in self._t]

    def coefficient_of(self, exponents: Sequence[int]) -> int:
        return self._t.get(self.ctx.pack(exponents), 0)

    def constant_coefficient(self) -> int:
        return self._t.get(self.ctx.zero_key, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(self.ctx, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self._t == other._t

    def __repr__(self) -> str:
        s = format_poly(self)
        if len(s) > 120:
            s = s[:117] + "..."
        return f"Poly({s})"

    # -- arithmetic ---------------------------------------------------

    def _check_ctx(self, other: "Poly") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(
                f"contexts differ: {self.ctx.names} vs {other.ctx.names}"
            )

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, {k: -c for k, c in self._t.items()}, _trusted=True)

    def __add__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly.const(self.ctx, other)
        self._check_ctx(other)
        if not self._t:
            return other
        if not other._t:
            return self
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly.const(self.ctx, other)
        return self.__add__(-other)

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            if not other:
                return Poly.zero(self.ctx)
            return Poly(
                self.ctx, {k: c * other for k, c in self._t.items()}, _trusted=True
            )
        self._check_ctx(other)
        a, b = self._t, other._t
        if not a or not b:
            return Poly.zero(self.ctx)
        if len(a) > len(b):
            a, b = b, a
        zero_key = self.ctx.zero_key
        out: dict[int, int] = {}
        get = out.get
        bitems = list(b.items())
        for ka, ca in a.items():
            base = ka - zero_key
            for kb, cb in bitems:
                k = kb + base
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = Poly.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def mul_monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Poly":
        if not coeff:
            return Poly.zero(self.ctx)
        delta = self.ctx.pack(exponents) - self.ctx.zero_key
        return Poly(
            self.ctx, {k + delta: c * coeff for k, c in self._t.items()}, _trusted=True
        )

    def reciprocal(self) -> "Poly":
        """Substitute every variable by its inverse (exponent vectors negated)."""
        ctx = self.ctx
        unpack, pack = ctx.unpack, ctx.pack
        return Poly(
            ctx,
            {pack(tuple(-e for e in unpack(k))): c for k, c in self._t.items()},
            _trusted=True,
        )

    def evaluate(self, values: Sequence) -> object:
        """Evaluate at a point; exact for Fraction/int values, works for complex.

        Variables with negative exponents require nonzero values.
        """
        if len(values) != self.ctx.nvars:
            raise ValueError("value count does not match context")
        unpack = self.ctx.unpack
        total = 0
        for k, c in self._t.items():
            term = c
            for e, v in zip(unpack(k), values):
                if e:
                    term = term * v**e
            total = total + term
        return total

    # -- structure ----------------------------------------------------

    def content_decomposition(self) -> tuple[int, int, tuple[int, ...], "Poly"]:
        """Write f = sign * content * x^m * primitive.

        content > 0 is the gcd of the coefficients, x^m the componentwise
        minimum (Laurent) monomial of the support, and the primitive part is
        sign-normalized so that its graded-lex leading coefficient is positive.
        """
        if not self._t:
            raise ValueError("zero polynomial has no content decomposition")
        content = 0
        for c in self._t.values():
            content = math.gcd(content, c)
            if content == 1:
                break
        mono = self.min_exponents()
        sign = 1 if self._t[max(self._t)] > 0 else -1
        delta = self.ctx.pack(mono) - self.ctx.zero_key
        div = sign * content
        prim = Poly(
            self.ctx, {k - delta: c // div for k, c in self._t.items()}, _trusted=True
        )
        return sign, content, mono, prim


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def integer_content_and_primitive(f: Poly) -> tuple[int, tuple[int, ...], Poly]:
    """(positive content, common monomial factor, sign-normalized primitive part)."""
    _, content, mono, prim = f.content_decomposition()
    return content, mono, prim


def exact_divide(f: Poly, g: Poly, allow_laurent: bool = False) -> Poly:
    """Return q with q*g == f exactly, or raise InexactDivision.

    With allow_laurent the quotient may contain negative exponents (used for
    monomial divisors during reciprocal clearing); otherwise every quotient
    monomial must be an honest polynomial multiple.
    """
    if g.is_zero():
        raise InexactDivision("division by the zero polynomial")
    if f.ctx != g.ctx:
        raise ContextMismatch("exact_divide operands have different contexts")
    ctx = f.ctx
    if f.is_zero():
        return f
    gt = g._t
    if len(gt) == 1:
        # Monomial divisor: divide term by term.
        (gk, gc), = gt.items()
        out = {}
        for k, c in f._t.items():
            if c % gc:
                raise InexactDivision("coefficient not divisible")
            if not allow_laurent and not ctx.key_divides(gk, k):
                raise InexactDivision("monomial not divisible")
            out[ctx.div_keys(k, gk)] = c // gc
        return Poly(ctx, out, _trusted=True)

    gk = max(gt)
    gc = gt[gk]
    gtail = [(k - gk, c) for k, c in gt.items() if k != gk]
    rem = dict(f._t)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    steps = 0
    while heap:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if c is None:
            continue  # stale heap entry
        del rem[k]
        if not allow_laurent and not ctx.key_divides(gk, k):
            raise InexactDivision("leading monomial not divisible")
        if c % gc:
            raise InexactDivision("leading coefficient not divisible")
        qc = c // gc
        quot[ctx.div_keys(k, gk)] = qc
        for dk, dc in gtail:
            kk = k + dk
            v = rem.get(kk)
            nv = (0 if v is None else v) - qc * dc
            if nv:
                rem[kk] = nv
                if v is None:
                    heapq.heappush(heap, -kk)
            else:
                rem.pop(kk, None)
        steps += 1
        if steps % 1024 == 0:
            cancel.check()
    if rem:
        raise InexactDivision("nonzero remainder")
    return Poly(ctx, quot)


def substitute(
    f: Poly,
    images: dict[int, tuple[int, Sequence[int]]],
    target: VarContext,
    strict: bool = True,
) -> Poly:
    """Map each variable (by index) to coeff * target-monomial and expand.

    Negative source exponents are supported only when the image coefficient is
    a unit (plus/minus 1) or the image is never raised to a negative power;
    the monomial part may be Laurent.  Unmapped variables raise under strict
    mode, otherwise they pass through by name.
    """
    ctx = f.ctx
    prepared: list[tuple[int, int] | None] = []
    for i in range(ctx.nvars):
        img = images.get(i)
        if img is None:
            if not strict:
                nm = ctx.names[i]
                if nm not in target.index:
                    raise UnsupportedSubstitution(
                        f"variable {nm} has no image and no counterpart in the target"
                    )
                img = (1, tuple(
                    1 if j == target.index[nm] else 0 for j in range(target.nvars)
                ))
            else:
                prepared.append(None)
                continue
        coeff, exps = img
        prepared.append((int(coeff), target.pack(exps) - target.zero_key))
    out: dict[int, int] = {}
    unpack = ctx.unpack
    tz = target.zero_key
    for k, c in f._t.items():
        exps = unpack(k)
        key = tz
        coeff = c
        dead = False
        for i, e in enumerate(exps):
            if not e:
                continue
            img = prepared[i]
            if img is None:
                raise UnsupportedSubstitution(
                    f"unmapped variable {ctx.names[i]} encountered (strict mode)"
                )
            ic, delta = img
            if ic == 0:
                if e > 0:
                    dead = True
                    break
                raise UnsupportedSubstitution(
                    f"zero image of {ctx.names[i]} raised to a negative power"
                )
            if e > 0:
                if ic != 1:
                    coeff *= ic**e
            elif ic == -1:
                if e & 1:
                    coeff = -coeff
            elif ic != 1:
                raise UnsupportedSubstitution(
                    f"negative power of non-unit coefficient for {ctx.names[i]}"
                )
            key += e * delta
        if dead:
            continue
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Poly(target, out, _trusted=True)


def rename_variables(f: Poly, target: VarContext, mapping: dict[int, int]) -> Poly:
    """Rebuild f over target, sending source variable i to target variable mapping[i]."""
    images = {
        i: (1, tuple(1 if j == mapping[i] else 0 for j in range(target.nvars)))
        for i in mapping
    }
    return substitute(f, images, target)


# -- univariate layer (the auxiliary elimination variable) -------------


class UniPoly:
    """Dense polynomial in one eliminated variable with Poly coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: VarContext, coeffs: Sequence[Poly], trim: bool = True):
        coeffs = list(coeffs)
        if trim:
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, ctx: VarContext, p: Poly) -> "UniPoly":
        return cls(ctx, [p])

    @classmethod
    def linear(cls, ctx: VarContext, c0: Poly, c1: Poly) -> "UniPoly":
        return cls(ctx, [c0, c1])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of a nonzero polynomial; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Poly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Poly.zero(self.ctx)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx, [])
        out = [Poly.zero(self.ctx) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, out)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            self.ctx,
            [self.coefficient(i) + other.coefficient(i) for i in range(n)],
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            self.ctx,
            [self.coefficient(i) - other.coefficient(i) for i in range(n)],
        )

    def __pow__(self, e: int) -> "UniPoly":
        result = UniPoly.const(self.ctx, Poly.const(self.ctx, 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, p: Poly) -> "UniPoly":
        return UniPoly(self.ctx, [c * p for c in self.coeffs])

    def at_zero(self) -> Poly:
        return self.coefficient(0)

    def divide_linear(self, a: int, b: int) -> "UniPoly":
        """Exact division by (a + b*t) with integer a, b; b may be zero only if a is a unit."""
        if b == 0:
            if a in (1, -1):
                return self.scale(Poly.const(self.ctx, a))
            raise InexactDivision("cannot divide by a non-unit constant linear form")
        if self.is_zero():
            return self
        # Long division from the top: q_{k-1} = lc / b, then fold back.
        out: list[Poly] = [Poly.zero(self.ctx)] * (len(self.coeffs) - 1)
        carry = Poly.zero(self.ctx)
        for k in range(len(self.coeffs) - 1, 0, -1):
            num = self.coeffs[k] + carry
            q = exact_divide(num, Poly.const(self.ctx, b))
            out[k - 1] = q
            carry = q * (-a)
        if self.coeffs[0] + carry:
            raise InexactDivision("linear form is not a factor")
        return UniPoly(self.ctx, out)


def product_of_linears(ctx: VarContext, factors: Iterable[tuple[Poly, Poly, int]]) -> UniPoly:
    """Expand prod (c0 + c1*t)**e."""
    result = UniPoly.const(ctx, Poly.const(ctx, 1))
    for c0, c1, e in factors:
        result = result * (UniPoly.linear(ctx, c0, c1) ** e)
    return result


# -- matrices and determinants -----------------------------------------


class PolyMatrix:
    """Rectangular grid of polynomials over a shared context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: VarContext, rows: Sequence[Sequence[Poly]]):
        rows = [list(r) for r in rows]
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("matrix rows have unequal lengths")
            for r in rows:
                for p in r:
                    if p.ctx != ctx:
                        raise ContextMismatch("matrix entry context mismatch")
        self.ctx = ctx
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def determinant(self, method: str = "auto") -> Poly:
        return determinant(self, method)


def _laplace_state_budget(masks: Sequence[int], cap: int) -> bool:
    """Cheap feasibility probe: count reachable column subsets bottom-up."""
    level = {0}
    total = 1
    for mask in reversed(masks):
        nxt = set()
        for s in level:
            free = mask & ~s
            while free:
                bit = free & -free
                nxt.add(s | bit)
                free ^= bit
        if not nxt:
            return True  # structurally singular: determinant is zero, cheap
        level = nxt
        total += len(level)
        if total > cap:
            return False
    return True


def _det_laplace(M: PolyMatrix) -> Poly:
    ctx = M.ctx
    n = len(M.rows)
    zero_key = ctx.zero_key
    states: dict[int, dict[int, int]] = {0: {zero_key: 1}}
    for r in range(n - 1, -1, -1):
        row = []
        for j, p in enumerate(M.rows[r]):
            if p._t:
                row.append((j, 1 << j, list(p._t.items())))
        nxt: dict[int, dict[int, int]] = {}
        for smask, minor in states.items():
            if not minor:
                continue
            mitems = list(minor.items())
            for j, bit, eitems in row:
                if smask & bit:
                    continue
                acc = nxt.get(smask | bit)
                if acc is None:
                    acc = nxt[smask | bit] = {}
                get = acc.get
                neg = (smask & (bit - 1)).bit_count() & 1
                for ek, ec in eitems:
                    base = ek - zero_key
                    c = -ec if neg else ec
                    for mk, mc in mitems:
                        k = mk + base
                        v = get(k)
                        acc[k] = c * mc if v is None else v + c * mc
            cancel.check()
        states = {
            m: {k: v for k, v in d.items() if v} for m, d in nxt.items()
        }
    full = (1 << n) - 1
    return Poly(ctx, states.get(full, {}), _trusted=True)


def _det_bareiss(M: PolyMatrix) -> Poly:
    ctx = M.ctx
    n = len(M.rows)
    A = [row[:] for row in M.rows]
    sign = 1
    prev = Poly.const(ctx, 1)
    for k in range(n - 1):
        # Pivot search: smallest nonzero entry by term count keeps growth down.
        piv, best = -1, None
        for i in range(k, n):
            t = A[i][k].num_terms
            if t and (best is None or t < best):
                piv, best = i, t
        if piv < 0:
            return Poly.zero(ctx)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        pkk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = pkk * A[i][j] - aik * A[k][j]
                A[i][j] = exact_divide(num, prev)
            A[i][k] = Poly.zero(ctx)
            cancel.check()
        prev = pkk
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant(M: PolyMatrix, method: str = "auto") -> Poly:
    n, m = M.shape
    if n != m:
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Poly.const(M.ctx, 1)
    if method == "auto":
        masks = [
            sum(1 << j for j, p in enumerate(row) if p._t) for row in M.rows
        ]
        method = (
            "laplace"
            if n <= 7 or _laplace_state_budget(masks, 250_000)
            else "bareiss"
        )
    if method == "laplace":
        return _det_laplace(M)
    if method == "bareiss":
        return _det_bareiss(M)
    raise ValueError(f"unknown determinant method {method!r}")


def sylvester_matrix(
    f: UniPoly, g: UniPoly, deg_f: int | None = None, deg_g: int | None = None
) -> PolyMatrix:
    ctx = f.ctx
    m = f.degree if deg_f is None else deg_f
    n = g.degree if deg_g is None else deg_g
    zero = Poly.zero(ctx)
    rows = []
    for i in range(n):
        row = [zero] * (m + n)
        for k in range(m + 1):
            row[i + k] = f.coefficient(m - k)
        rows.append(row)
    for i in range(m):
        row = [zero] * (m + n)
        for k in range(n + 1):
            row[i + k] = g.coefficient(n - k)
        rows.append(row)
    return PolyMatrix(ctx, rows)


def sylvester_resultant(
    f: UniPoly, g: UniPoly, deg_f: int | None = None, deg_g: int | None = None
) -> Poly:
    """Determinant of the Sylvester matrix, eliminating the auxiliary variable.

    Optional formal degrees allow computing the resultant of specializations
    whose leading coefficients vanished; by default the actual degrees are
    used.  Both arguments constant is an error.
    """
    if f.ctx != g.ctx:
        raise ContextMismatch("resultant operands have different contexts")
    m = f.degree if deg_f is None else deg_f
    n = g.degree if deg_g is None else deg_g
    if m < 0 or n < 0:
        raise DegenerateResultant("resultant of the zero polynomial")
    if m == 0 and n == 0:
        raise DegenerateResultant("both polynomials are constant in t")
    if m == 0:
        return f.coefficient(0) ** n
    if n == 0:
        return g.coefficient(0) ** m
    return determinant(sylvester_matrix(f, g, m, n))


# -- serialization ------------------------------------------------------


def format_monomial(ctx: VarContext, exps: Sequence[int]) -> str:
    parts = []
    for nm, e in zip(ctx.names, exps):
        if e == 0:
            continue
        parts.append(nm if e == 1 else f"{nm}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text form: graded-lex descending, `+c·mono` per term."""
    if f.is_zero():
        return "0"
    parts = []
    for exps, c in f.terms():
        sign = "+" if c > 0 else "-"
        mono = format_monomial(f.ctx, exps)
        if mono:
            parts.append(f"{sign}{abs(c)}·{mono}")
        else:
            parts.append(f"{sign}{abs(c)}")
    return " ".join(parts)


_TERM_RE = re.compile(r"^([+-])(\d+)(?:·(.+))?$")
_VARPOW_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_poly(ctx: VarContext, text: str) -> Poly:
    text = text.strip()
    if text == "0":
        return Poly.zero(ctx)
    acc: dict[int, int] = {}
    for token in text.split():
        m = _TERM_RE.match(token)
        if not m:
            raise ParseError(f"bad term {token!r}")
        sign, digits, mono = m.groups()
        coeff = int(digits) if sign == "+" else -int(digits)
        exps = [0] * ctx.nvars
        if mono:
            for piece in mono.split("*"):
                vm = _VARPOW_RE.match(piece)
                if not vm:
                    raise ParseError(f"bad monomial factor {piece!r}")
                name, power = vm.groups()
                if name not in ctx.index:
                    raise ParseError(f"unknown variable {name!r}")
                exps[ctx.index[name]] += 1 if power is None else int(power)
        k = ctx.pack(exps)
        acc[k] = acc.get(k, 0) + coeff
    return Poly(ctx, acc)


def poly_to_json(f: Poly) -> dict:
    return {
        "vars": list(f.ctx.names),
        "terms": [{"e": list(exps), "c": str(c)} for exps, c in f.terms()],
    }


def poly_from_json(data: dict, ctx: VarContext | None = None) -> Poly:
    try:
        names = data["vars"]
        terms = data["terms"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed polynomial JSON: {exc}") from exc
    if ctx is None:
        ctx = VarContext(names)
    elif list(ctx.names) != list(names):
        raise ParseError("polynomial JSON variables do not match the expected context")
    return Poly.from_terms(ctx, ((t["e"], int(t["c"])) for t in terms))


def poly_json_text(f: Poly) -> str:
    return json.dumps(poly_to_json(f), separators=(",", ":"), sort_keys=False)
