"""Small exact linear algebra over the rationals (lists of lists of mpq)."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .poly import to_scalar


def mat(rows) -> list[list]:
    return [[to_scalar(v) for v in r] for r in rows]


def identity(n: int) -> list[list]:
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def matmul(a, b):
    m, k, n = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), mpq(0)) for j in range(n)] for i in range(m)]


def matvec(a, v):
    return [sum((a[i][t] * v[t] for t in range(len(v))), mpq(0)) for i in range(len(a))]


def sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(map(to_scalar, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def inverse(a):
    n = len(a)
    aug = [list(r) + identity(n)[i] for i, r in enumerate(mat(a))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red[:n]]


def det(a) -> mpq:
    a = mat(a)
    n = len(a)
    d = mpq(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return mpq(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def coordinates(basis: Sequence[Sequence], v: Sequence) -> list | None:
    """Coefficients expressing v in the span of ``basis`` vectors, or None."""
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    n = len(v)
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    red, piv = rref(rows)
    if k in piv:
        return None
    sol = [mpq(0)] * k
    for r, c in enumerate(piv):
        sol[c] = red[r][k]
    return sol


def flatten(m) -> list:
    return [v for row in m for v in row]
