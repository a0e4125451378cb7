"""Exact dense linear algebra over a field (Scalar or AlgebraicNumber entries).

Elimination divides by exact pivots, so there is no rounding. Zero tests go
through ``is_zero()``, which for Scalars is the deterministic identity test.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def rref(rows: Sequence[Sequence], zero, one=None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c] if one is None else one / m[r][c]
        m[r] = [x * inv if not _is_zero(x) else zero for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b if not _is_zero(b) else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], zero) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows, zero)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Kernel basis, one vector per free column, in increasing free-column order."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, zero, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * ncols
        v[fcol] = one
        for r, pc in enumerate(pivots):
            if not _is_zero(red[r][fcol]):
                v[pc] = -red[r][fcol]
        basis.append(v)
    return basis


def inverse(mat: Sequence[Sequence], zero, one) -> list[list]:
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(mat)]
    red, pivots = rref(aug, zero, one)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def determinant(mat: Sequence[Sequence], zero, one):
    n = len(mat)
    m = [list(r) for r in mat]
    det = one
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if p is None:
            return zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = one / m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    if any(len(r) != k for r in a):
        raise DimensionMismatch("matmul shape mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for p in range(k):
                x, y = a[i][p], b[p][j]
                if not (_is_zero(x) or _is_zero(y)):
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence, zero) -> list:
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if not (_is_zero(x) or _is_zero(y)):
                acc = acc + x * y
        out.append(acc)
    return out
