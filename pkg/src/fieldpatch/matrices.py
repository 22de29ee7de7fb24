"""Small dense matrices over patch-ring series (lists of lists)."""

from __future__ import annotations

from itertools import permutations

from .series import INF, Laurent, PatchSeries, Tag


def identity(field, n, tprec, tag=Tag.F0):
    one = PatchSeries.const(field, 1, tag, tprec)
    zero = PatchSeries.zero(field, tag, tprec)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field, r, c, tprec, tag=Tag.F0):
    z = PatchSeries.zero(field, tag, tprec)
    return [[z] * c for _ in range(r)]


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def neg(A):
    return [[-a for a in r] for r in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = A[i][0] * B[0][j]
            for k in range(1, m):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def scale(A, s):
    """Multiply every entry by the series (or scalar) ``s``."""
    return [[a * s for a in r] for r in A]


def truncate(A, tprec=None, uprec=None):
    return [[a.truncate(tprec, uprec) for a in r] for r in A]


def ord_t(A):
    return min((a.ord_t() for r in A for a in r), default=INF)


def congruent(A, B):
    return all(a.congruent(b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def det(A):
    """Determinant by cofactor expansion (no divisions, so no precision loss)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if n <= 4:
        acc = None
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = A[0][j] * det(minor)
            if j % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc
    acc = None
    for p in permutations(range(n)):
        term = A[0][p[0]]
        for i in range(1, n):
            term = term * A[i][p[i]]
        if _perm_sign(p) < 0:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def adjugate(A):
    n = len(A)
    if n == 1:
        return [[A[0][0] - A[0][0] + 1]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            c = det(minor)
            out[j][i] = -c if (i + j) % 2 else c
    return out


def inverse(A, uprec=None):
    """Inverse as adjugate times the inverse determinant."""
    d = det(A)
    dinv = d.invert(uprec=uprec)
    return scale(adjugate(A), dinv)


def lift_scalars(field, rows, tprec, tag=Tag.F0):
    """Matrix of constant series from a matrix of ground-field scalars."""
    return [[PatchSeries.const(field, c, tag, tprec) for c in r] for r in rows]


def residue(A):
    """The t^0 coefficients as a matrix of Laurent coefficients."""
    return [[a.coeff(0) if a.tprec > 0 else Laurent.zero(a.field) for a in r] for r in A]
