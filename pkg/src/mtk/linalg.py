"""Small exact matrix helpers over cyclotomic values.

Matrices are plain lists of lists of CycloNum.  Sizes here are tiny
(category ranks), so clarity beats asymptotics; the one algorithmic
choice that matters is the fraction-free determinant, which decides
invertibility with no tolerance policy.
"""
from __future__ import annotations

from .cyclo import CycloNum

Matrix = list[list[CycloNum]]


def identity(n: int) -> Matrix:
    one, zero = CycloNum.one(), CycloNum.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def scalar_matrix(n: int, s: CycloNum) -> Matrix:
    zero = CycloNum.zero()
    return [[s if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = CycloNum.zero()
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def conjugate_transpose(a: Matrix) -> Matrix:
    return [[a[j][i].conjugate() for j in range(len(a))] for i in range(len(a[0]))]


def mat_equal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        return False
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def determinant(a: Matrix) -> CycloNum:
    """Fraction-free (Bareiss) determinant over the exact field.

    Every division is exact by construction, keeping intermediate
    entries from accumulating denominators.
    """
    n = len(a)
    if n == 0:
        return CycloNum.one()
    m = [row[:] for row in a]
    sign = 1
    prev = CycloNum.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot_row is None:
                return CycloNum.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = CycloNum.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def is_permutation_matrix(a: Matrix) -> list[int] | None:
    """The permutation a represents (as an image list), or None."""
    n = len(a)
    one, zero = CycloNum.one(), CycloNum.zero()
    perm = []
    for i in range(n):
        hits = [j for j in range(n) if a[i][j] == one]
        if len(hits) != 1 or any(a[i][j] != zero for j in range(n) if j != hits[0]):
            return None
        perm.append(hits[0])
    return perm if sorted(perm) == list(range(n)) else None
