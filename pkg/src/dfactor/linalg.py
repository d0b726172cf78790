"""Dense exact linear algebra over a coefficient field.

Matrices are lists of row lists of field elements.  Everything is
exact (Fraction or F_p ints), so ranks and solvability are decisions,
not estimates.  Failed solves come with a Fredholm certificate: a left
null vector of A that pairs nonzero with b.
"""

from __future__ import annotations

from dataclasses import dataclass


def zeros(m: int, n: int, field):
    return [[field.zero] * n for _ in range(m)]


def identity(n: int, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(a, b, field):
    m, k = len(a), len(b)
    n = len(b[0]) if b else 0
    out = zeros(m, n, field)
    for i in range(m):
        for t in range(k):
            ait = a[i][t]
            if ait == field.zero:
                continue
            for j in range(n):
                out[i][j] = field.add(out[i][j], field.mul(ait, b[t][j]))
    return out


def rref(mat, field):
    """Row-reduce in place on a copy; returns (rref, pivot_columns)."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != field.zero), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(v, inv) for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != field.zero:
                f = a[i][c]
                a[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(mat, field) -> int:
    if not mat:
        return 0
    return len(rref(mat, field)[1])


@dataclass(frozen=True)
class FredholmCertificate:
    """y with y*A = 0 and y*b != 0: re-verifiable witness of no solution."""

    y: tuple

    def reverify(self, mat, rhs, field) -> bool:
        m = len(mat)
        n = len(mat[0]) if m else 0
        for j in range(n):
            acc = field.zero
            for i in range(m):
                acc = field.add(acc, field.mul(self.y[i], mat[i][j]))
            if acc != field.zero:
                return False
        acc = field.zero
        for i in range(m):
            acc = field.add(acc, field.mul(self.y[i], rhs[i]))
        return acc != field.zero


def solve(mat, rhs, field):
    """One solution of A*x = b (free variables zero), or a certificate.

    Returns ``(x, None)`` or ``(None, FredholmCertificate)``.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    # eliminate on [A | b] while tracking the row transform
    a = [row[:] + [rhs[i]] + [field.one if k == i else field.zero for k in range(m)]
         for i, row in enumerate(mat)]
    r = 0
    pivots = []
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != field.zero), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(v, inv) for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != field.zero:
                f = a[i][c]
                a[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != field.zero:
            y = tuple(a[i][n + 1 :])
            return None, FredholmCertificate(y)
    x = [field.zero] * n
    for row_idx, c in enumerate(pivots):
        x[c] = a[row_idx][n]
    return x, None


def kernel_basis(mat, field):
    """Basis of the right kernel of A."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[field.one if j == k else field.zero for j in range(n)] for k in range(n)]
    red, pivots = rref(mat, field)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for j in free:
        v = [field.zero] * n
        v[j] = field.one
        for row_idx, c in enumerate(pivots):
            v[c] = field.neg(red[row_idx][j])
        basis.append(v)
    return basis


def invert(mat, field):
    """Inverse of a square matrix, or None."""
    n = len(mat)
    aug = [row[:] + ident_row for row, ident_row in zip(mat, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]
