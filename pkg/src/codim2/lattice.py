"""Integer matrix presentations of a codimension-2 toric variety.

The primal object is an n x 2 integer matrix B whose columns sum to zero and
span a rank-2 lattice.  Its Gale dual is an (n-2) x n matrix A with A @ B = 0
whose columns all pair to 1 against some rational covector.  This module
validates both presentations, converts between them, and computes the
combinatorial statistics (positive column sums, opposite-quadrant pair
multiplicities, degree, relevant lines) that drive every later formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from . import intlinalg
from .errors import InvalidConfiguration, NotPrime
from .intlinalg import det2


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class BConfig:
    """Validated n x 2 presentation; rows are the planar vectors b_i."""

    rows: tuple[tuple[int, int], ...]
    var_names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def nonzero_rows(self) -> list[tuple[int, tuple[int, int]]]:
        return [(i, b) for i, b in enumerate(self.rows) if b != (0, 0)]

    def require_nonzero_rows(self, what: str) -> None:
        if any(b == (0, 0) for b in self.rows):
            raise InvalidConfiguration(f"{what} requires all rows of B to be nonzero")

    def column(self, ell: int) -> tuple[int, ...]:
        return tuple(b[ell] for b in self.rows)


@dataclass(frozen=True)
class AConfig:
    """Validated (n-2) x n presentation; columns are the exponent points a_i."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)


@dataclass(frozen=True)
class ConfigStats:
    """Degree bookkeeping derived from B alone."""

    beta: tuple[int, int]
    nu: dict[tuple[int, int], int]
    degree: int

    @property
    def nu_total(self) -> int:
        return sum(self.nu.values())


@dataclass(frozen=True)
class RelevantLine:
    """A line through the origin that carries rows of B in both directions.

    v is the primitive direction, oriented so the signed multiplicity sum
    alpha is nonnegative (ties broken toward the lexicographically positive
    representative).  delta collects the mass on the negative side.
    """

    v: tuple[int, int]
    member_indices: tuple[int, ...]
    lambdas: tuple[int, ...]
    alpha: int
    delta: int

    @property
    def b_v(self) -> tuple[int, int]:
        return (self.alpha * self.v[0], self.alpha * self.v[1])

    @property
    def on_axis(self) -> bool:
        return self.v[0] == 0 or self.v[1] == 0


def validate_b(rows: Sequence[Sequence[int]], var_names: Sequence[str] | None = None) -> BConfig:
    """Check the standing hypotheses on B and freeze it.

    Zero rows are allowed here (they are rejected separately by the
    discriminant entry points, which assume every b_i is nonzero).
    """
    for r in rows:
        for x in r:
            if int(x) != x:
                raise InvalidConfiguration(f"matrix entries must be integers, got {x!r}")
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    n = len(rows)
    if n < 3:
        raise InvalidConfiguration("B must have at least 3 rows")
    if any(len(r) != 2 for r in rows):
        raise InvalidConfiguration("every row of B must have exactly 2 entries")
    for ell in range(2):
        if sum(r[ell] for r in rows) != 0:
            raise InvalidConfiguration(
                f"column sums must be zero (column {ell + 1} sums to "
                f"{sum(r[ell] for r in rows)})"
            )
    if not any(
        det2(rows[i], rows[j])
        for i in range(n)
        for j in range(i + 1, n)
    ):
        raise InvalidConfiguration("rows of B must span a rank-2 lattice")
    names = _default_names(n) if var_names is None else tuple(var_names)
    if len(names) != n or len(set(names)) != n:
        raise InvalidConfiguration("variable names must be unique, one per row")
    return BConfig(rows, names)


def is_prime(b: BConfig) -> bool:
    """True iff the rows of B generate the full planar lattice (gcd of 2x2 minors is 1)."""
    g = 0
    for i in range(b.n):
        for j in range(i + 1, b.n):
            g = math.gcd(g, det2(b.rows[i], b.rows[j]))
            if g == 1:
                return True
    return g == 1


def validate_a(rows: Sequence[Sequence[int]]) -> AConfig:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if not rows:
        raise InvalidConfiguration("A must be nonempty")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise InvalidConfiguration("rows of A must have equal length")
    if len(rows) != n - 2:
        raise InvalidConfiguration("A must have n-2 rows for n columns")
    if intlinalg.rank([list(r) for r in rows]) != n - 2:
        raise InvalidConfiguration("A must have full rank n-2")
    # There must be a rational covector pairing to 1 with every column.
    mat = [[rows[i][j] for i in range(n - 2)] for j in range(n)]
    if intlinalg.solve_rational(mat, [1] * n) is None:
        raise InvalidConfiguration(
            "no rational vector w with w·a_i = 1 for all columns a_i"
        )
    return AConfig(rows)


def gale_dual_a(b: BConfig) -> AConfig:
    """The (n-2) x n matrix whose rows are a canonical basis of {u : u·B = 0}.

    Exists iff the lattice ideal is prime; the Hermite form of the kernel
    makes the output deterministic despite the GL(n-2, Z) freedom.
    """
    if not is_prime(b):
        raise NotPrime(
            "rows of B do not generate the full planar lattice; no Gale dual exists"
        )
    bt = [[b.rows[i][ell] for i in range(b.n)] for ell in range(2)]
    basis = intlinalg.kernel_basis(bt)
    rows = intlinalg.hermite_row_form(basis)
    return validate_a(rows)


def gale_dual_b(a: AConfig, var_names: Sequence[str] | None = None) -> BConfig:
    """An n x 2 matrix whose columns are a Hermite-reduced basis of ker(A)."""
    basis = intlinalg.kernel_basis([list(r) for r in a.rows])
    if len(basis) != 2:
        raise InvalidConfiguration(
            f"kernel of A has rank {len(basis)}, expected 2"
        )
    basis = intlinalg.hermite_row_form(basis)
    rows = [(basis[0][i], basis[1][i]) for i in range(a.n)]
    return validate_b(rows, var_names)


def compute_stats(b: BConfig) -> ConfigStats:
    """Positive column sums, opposite-quadrant multiplicities, and the degree."""
    beta = tuple(sum(x for x in b.column(ell) if x > 0) for ell in range(2))
    nu: dict[tuple[int, int], int] = {}
    for r in range(b.n):
        br = b.rows[r]
        if 0 in br:
            continue
        for s in range(r + 1, b.n):
            bs = b.rows[s]
            if 0 in bs:
                continue
            # Interiors of opposite quadrants: both coordinates flip sign.
            if br[0] * bs[0] < 0 and br[1] * bs[1] < 0:
                nu[(r, s)] = min(abs(br[0] * bs[1]), abs(br[1] * bs[0]))
    degree = beta[0] * beta[1] - sum(nu.values())
    if degree < 1:
        raise InvalidConfiguration(f"computed degree {degree} < 1; B is not valid")
    return ConfigStats((beta[0], beta[1]), nu, degree)


def _angle_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    """Order planar vectors by angle in [0, 2*pi) from the positive x-axis."""
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return -1 if hu < hv else 1
    cross = det2(u, v)
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def sort_counterclockwise(
    entries: Sequence[tuple[int, tuple[int, int]]]
) -> list[tuple[int, tuple[int, int]]]:
    """Sort (index, vector) pairs counterclockwise starting from angle 0; stable."""
    return sorted(entries, key=cmp_to_key(lambda a, b: _angle_cmp(a[1], b[1])))


def relevant_lines(b: BConfig) -> list[RelevantLine]:
    """Lines through the origin holding rows of B in both directions."""
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, row in b.nonzero_rows():
        p = intlinalg.primitive_vector(row)
        if p < (0, 0) or (p[0] < 0 and p[1] == 0) or (p[0] == 0 and p[1] < 0):
            p = (-p[0], -p[1])
        # lambda of the row w.r.t. the lex-positive primitive representative
        lam = row[0] // p[0] if p[0] else row[1] // p[1]
        groups.setdefault(p, []).append((i, lam))
    lines = []
    for p, members in groups.items():
        if not (any(l > 0 for _, l in members) and any(l < 0 for _, l in members)):
            continue
        alpha = sum(l for _, l in members)
        if alpha < 0:
            v = (-p[0], -p[1])
            members = [(i, -l) for i, l in members]
            alpha = -alpha
        else:
            v = p
        delta = sum(-l for _, l in members if l < 0)
        lines.append(
            RelevantLine(
                v=v,
                member_indices=tuple(i for i, _ in members),
                lambdas=tuple(l for _, l in members),
                alpha=alpha,
                delta=delta,
            )
        )
    lines.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a.v, b.v)))
    return lines
