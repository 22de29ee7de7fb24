"""Exact dense linear algebra over a ground field (row reduction, nullspace)."""

from __future__ import annotations

from .scalars import Field


def rref(field: Field, rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    p = field.p
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.norm(v * inv) for v in A[r]]
        row = A[r]
        nz = [k for k in range(c, ncols) if row[k] != 0]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai = A[i]
                for k in nz:
                    Ai[k] = Ai[k] - f * row[k]
                    if p:
                        Ai[k] %= p
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(field: Field, rows, ncols: int):
    """A basis of ``{v : A v = 0}`` as a list of vectors."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def solve(field: Field, A, b):
    """One solution of ``A x = b`` or None."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(field, aug)
    if n in pivots:
        return None
    x = [field.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def det(field: Field, M):
    """Determinant by elimination."""
    A = [list(r) for r in M]
    n = len(A)
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = field.neg(d)
        d = field.norm(d * A[c][c])
        inv = field.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = field.norm(A[i][c] * inv)
                A[i] = [field.norm(a - f * b) for a, b in zip(A[i], A[c])]
    return d
