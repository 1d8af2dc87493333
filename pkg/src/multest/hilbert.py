"""Hilbert series of monomial ideals; projective dimension and degree."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import Ideal


@dataclass(frozen=True)
class HilbertData:
    dim: int
    degree: int


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list[int], b: list[int], sign: int = 1) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += sign * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def hilbert_numerator(gens: list[tuple]) -> list[int]:
    """Numerator N(t) with HS(S/M) = N(t)/(1-t)^n, coefficients low to high."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    disjoint = all(not (supports[i] & supports[j])
                   for i in range(len(gens)) for j in range(i + 1, len(gens)))
    if disjoint:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the variable occurring in most generators
    counts: dict[int, int] = {}
    for s in supports:
        for i in s:
            counts[i] = counts.get(i, 0) + 1
    v = max(sorted(counts), key=lambda i: counts[i])
    n = len(gens[0])
    pivot = tuple(1 if i == v else 0 for i in range(n))
    added = hilbert_numerator(gens + [pivot])
    colon = hilbert_numerator([tuple(max(e - p, 0) for e, p in zip(g, pivot)) for g in gens])
    return _padd(added, [0] + colon)


def dim_degree(I: Ideal) -> HilbertData:
    """Projective dimension and degree of the zero set of a homogeneous ideal."""
    n = I.nvars
    lms = I.gb().leading_monomials()
    num = hilbert_numerator(lms)
    if num == [0]:
        return HilbertData(-1, 0)
    k = 0
    while sum(num) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q or [0]
        k += 1
    krull = n - k
    return HilbertData(krull - 1, sum(num) if krull > 0 else 0)


def zero_set_empty(I: Ideal) -> bool:
    return dim_degree(I).dim == -1
