"""Small exact integer linear algebra: Hermite/Smith forms, kernels, lattices.

Everything works on plain lists of Python ints; matrices here never exceed a
few dozen entries, so clarity beats asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def _copy(mat: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in mat]


def hermite_row_form(mat: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form (canonical basis of the row lattice).

    Pivots are positive, entries above a pivot are reduced to [0, pivot), and
    zero rows are dropped.
    """
    A = _copy(mat)
    if not A:
        return []
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        # Gauss-like gcd elimination in column c, rows r..end.
        piv = None
        for i in range(r, rows):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            while A[i][c]:
                q = A[r][c] // A[i][c]
                A[r] = [a - q * b for a, b in zip(A[r], A[i])]
                A[r], A[i] = A[i], A[r]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return [row for row in A[:r] if any(row)]


def kernel_basis(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {u : mat @ u = 0}, as a list of vectors.

    Column operations reduce mat while the same operations are applied to an
    identity matrix; columns that end up annihilated give the kernel.  The
    kernel of an integer matrix is automatically saturated.
    """
    A = _copy(mat)
    if not A:
        raise ValueError("kernel of an empty matrix is ambiguous")
    rows, cols = len(A), len(A[0])
    U = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def addmul_col(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    r = 0
    for i in range(rows):
        piv = None
        for j in range(r, cols):
            if A[i][j]:
                piv = j
                break
        if piv is None:
            continue
        swap_cols(r, piv)
        for j in range(r + 1, cols):
            while A[i][j]:
                q = A[i][r] // A[i][j]
                for row in A:
                    row[r] -= q * row[j]
                for row in U:
                    row[r] -= q * row[j]
                swap_cols(r, j)
        r += 1
        if r == cols:
            break
    # Columns r..cols-1 of U span the kernel.
    return [[U[i][j] for i in range(cols)] for j in range(r, cols)]


def smith_invariants(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of the Smith normal form, in divisibility order.

    Reductions always subtract a multiple of the pivot row/column from the
    entry being cleared and swap only when the division was inexact; each swap
    strictly shrinks the pivot, which bounds the dirty-pass loop.
    """
    A = _copy(mat)
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])

    def find_pivot(t):
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j]:
                    return i, j
        return None

    t = 0
    invariants = []
    while True:
        pos = find_pivot(t)
        if pos is None:
            break
        i, j = pos
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            for i in range(t + 1, rows):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
            dirty = False
            for j in range(t + 1, cols):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True  # the swap may repopulate column t
            if not dirty:
                break
        piv = abs(A[t][t])
        # Enforce divisibility: fold any non-multiple entry into the pivot.
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if A[i][j] % piv:
                    A[t] = [a + b for a, b in zip(A[t], A[i])]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        invariants.append(piv)
        t += 1
        if t == min(rows, cols):
            break
    return invariants


def rank(mat: Sequence[Sequence[int]]) -> int:
    return len(hermite_row_form(mat))


def row_lattices_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return hermite_row_form(a) == hermite_row_form(b)


def solve_rational(mat: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """One rational solution of mat @ x = rhs, or None if inconsistent."""
    rows, cols = len(mat), len(mat[0]) if mat else 0
    A = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(mat, rhs)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        A[r] = [x / A[r][c] for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if A[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for idx, c in enumerate(pivots):
        x[c] = A[idx][cols]
    return x


def primitive_vector(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]
