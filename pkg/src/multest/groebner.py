"""Buchberger's algorithm and the ideal operations built on it."""

from __future__ import annotations

import os
from operator import add, ge, sub
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .poly import DimensionError, Polynomial, grevlex_key

DEFAULT_BUDGET = 2_000_000


class ResourceError(RuntimeError):
    """A configured step budget was exhausted."""


def default_budget() -> int:
    env = os.environ.get("MULTEST_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class MonomialOrder:
    """A monomial order given by a sort key (larger key = larger monomial)."""

    __slots__ = ("name", "key")

    def __init__(self, name: str, key: Callable):
        self.name = name
        self.key = key

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name})"


GREVLEX = MonomialOrder("grevlex", grevlex_key)
LEX = MonomialOrder("lex", lambda m: tuple(reversed(m)))


def elimination_order(elim: Iterable[int]) -> MonomialOrder:
    """Block order: any monomial involving ``elim`` beats one that does not."""
    ev = tuple(sorted(set(elim)))

    def key(m):
        return (sum(m[i] for i in ev), grevlex_key(m))

    return MonomialOrder(f"elim{ev}", key)


# ---------------------------------------------------------------------------
# core engine on raw dicts


def _monic(f: dict, key) -> dict:
    lm = max(f, key=key)
    c = f[lm]
    if c == 1:
        return f
    inv = 1 / c
    return {m: v * inv for m, v in f.items()}


def _divides(a, b) -> bool:
    return all(map(ge, b, a))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget):
        self.left = budget

    def tick(self, n=1):
        self.left -= n
        if self.left < 0:
            raise ResourceError("Groebner step budget exhausted")


def _reduce(f: dict, basis: Sequence[tuple], key, counter: _Counter | None = None,
            keycache: dict | None = None) -> dict:
    """Full normal form of f modulo monic polynomials ``basis`` = [(lm, poly)]."""
    f = dict(f)
    r = {}
    kc = keycache if keycache is not None else {}

    def k(m):
        v = kc.get(m)
        if v is None:
            v = kc[m] = key(m)
        return v

    while f:
        m = max(f, key=k)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(map(sub, m, lm))
                for gm, gc in g.items():
                    mm = tuple(map(add, q, gm))
                    v = f.get(mm, 0) - c * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                if counter is not None:
                    counter.tick()
                break
        else:
            r[m] = f.pop(m)
    return r


def buchberger(polys: Sequence[dict], key, budget: int | None = None) -> list[dict]:
    """Reduced Groebner basis of raw polynomials (dicts) for the order ``key``.

    Sugar selection with the Gebauer-Moeller pair criteria."""
    counter = _Counter(default_budget() if budget is None else budget)
    kc: dict = {}

    def k(m):
        v = kc.get(m)
        if v is None:
            v = kc[m] = key(m)
        return v

    polys = [p for p in polys if p]
    if not polys:
        return []
    G: list[dict] = []
    LM: list[tuple] = []
    sugar: list[int] = []
    live: list[int] = []
    pairs: dict = {}

    def basis():
        return [(LM[i], G[i]) for i in live]

    def update(h):
        lmh = LM[h]
        cand = list(live)
        lcms = {i: _lcm(LM[i], lmh) for i in cand}
        keep = []
        for idx, i in enumerate(cand):
            li = lcms[i]
            if _coprime(LM[i], lmh):
                keep.append(i)
                continue
            others = [j for j in cand[idx + 1:]] + keep
            if any(_divides(lcms[j], li) for j in others if j != i):
                continue
            keep.append(i)
        # drop pairs with equal lcm among the kept (chain criterion refinement)
        fresh = {}
        seen_lcm = set()
        for i in keep:
            li = lcms[i]
            if _coprime(LM[i], lmh):
                continue
            if li in seen_lcm:
                continue
            seen_lcm.add(li)
            fresh[(i, h)] = li
        # Gebauer-Moeller criterion B on old pairs
        for (i, j), (s, kk, lij) in list(pairs.items()):
            if _divides(lmh, lij) and _lcm(LM[i], lmh) != lij and _lcm(LM[j], lmh) != lij:
                del pairs[(i, j)]
        for (i, j), lij in fresh.items():
            di = sum(lij) - sum(LM[i])
            dj = sum(lij) - sum(LM[j])
            s = max(sugar[i] + di, sugar[j] + dj)
            pairs[(i, j)] = (s, k(lij), lij)
        live[:] = [i for i in live if not _divides(lmh, LM[i])]
        live.append(h)

    def add_poly(f, s):
        f = _monic(f, k)
        G.append(f)
        LM.append(max(f, key=k))
        sugar.append(s)
        update(len(G) - 1)

    for f in sorted(polys, key=lambda p: (max(sum(m) for m in p), k(max(p, key=k)))):
        r = _reduce(f, basis(), k, counter, kc)
        if r:
            add_poly(r, max(sum(m) for m in f))

    while pairs:
        (i, j) = min(pairs, key=lambda p: (pairs[p][0], pairs[p][1], p))
        s, _, lij = pairs.pop((i, j))
        qi = tuple(map(sub, lij, LM[i]))
        qj = tuple(map(sub, lij, LM[j]))
        sp: dict = {}
        for m, c in G[i].items():
            sp[tuple(map(add, qi, m))] = c
        for m, c in G[j].items():
            mm = tuple(map(add, qj, m))
            v = sp.get(mm, 0) - c
            if v:
                sp[mm] = v
            else:
                sp.pop(mm, None)
        counter.tick()
        if not sp:
            continue
        r = _reduce(sp, basis(), k, counter, kc)
        if r:
            add_poly(r, s)

    # interreduce the (already minimal) live basis
    out = []
    lb = basis()
    for idx, (lm, g) in enumerate(lb):
        others = lb[:idx] + lb[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, k, counter, kc)
        red[lm] = mpq(1)
        out.append(red)
    out.sort(key=lambda p: k(max(p, key=k)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public types


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for one monomial order."""

    __slots__ = ("nvars", "order", "polys", "_pairs", "_kc")

    def __init__(self, nvars: int, order: MonomialOrder, raw: list[dict]):
        self.nvars = nvars
        self.order = order
        self.polys = tuple(Polynomial(nvars, p) for p in raw)
        self._pairs = [(max(p, key=order.key), p) for p in raw]
        self._kc: dict = {}

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _ in self._pairs]

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.nvars != self.nvars:
            raise DimensionError("ambient mismatch in normal form")
        return Polynomial(self.nvars, _reduce(f.terms, self._pairs, self.order.key, None, self._kc))

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def canonical(self) -> tuple:
        return tuple(p.canonical() for p in self.polys)


def _canonical_gens(gens: Iterable[Polynomial]) -> list[Polynomial]:
    uniq = {}
    for g in gens:
        if g:
            g = g.monic()
            uniq[g] = None
    return sorted(uniq, key=lambda p: (grevlex_key(p.leading()[0]), p.to_str()), reverse=True)


class Ideal:
    """Ideal of a polynomial ring given by generators; bases are cached."""

    __slots__ = ("nvars", "gens", "_gb")

    def __init__(self, gens: Iterable[Polynomial] = (), nvars: int | None = None):
        gens = list(gens)
        if nvars is None:
            if not gens:
                raise DimensionError("ambient size needed for an empty generator list")
            nvars = gens[0].nvars
        for g in gens:
            if g.nvars != nvars:
                raise DimensionError(f"generator in {g.nvars} variables, ideal in {nvars}")
        self.nvars = nvars
        self.gens = tuple(_canonical_gens(gens))
        self._gb: dict = {}

    @classmethod
    def unit(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.constant(nvars, 1)], nvars)

    @classmethod
    def irrelevant(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.variable(nvars, i) for i in range(nvars)], nvars)

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def gb(self, order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
        b = self._gb.get(order)
        if b is None:
            raw = buchberger([g.terms for g in self.gens], order.key, budget)
            b = GroebnerBasis(self.nvars, order, raw)
            self._gb[order] = b
        return b

    def reduced(self) -> "Ideal":
        """Same ideal with its reduced grevlex basis as generators."""
        out = Ideal(self.gb().polys, self.nvars)
        out._gb[GREVLEX] = self.gb()
        return out

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.gb().reduce(f)

    def contains(self, f: Polynomial) -> bool:
        return self.gb().reduce(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.gb().canonical() == other.gb().canonical()

    def __hash__(self):
        return hash((self.nvars, self.gb().canonical()))

    def __add__(self, other: "Ideal") -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.gens + other.gens, self.nvars)
        return Ideal(self.gens + tuple(other), self.nvars)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.gens for b in other.gens], self.nvars)

    def max_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"

    def basis_str(self) -> list[str]:
        return [str(p) for p in self.gb().polys]


# ---------------------------------------------------------------------------
# operations


def groebner(I: Ideal, order: MonomialOrder = GREVLEX, budget: int | None = None) -> GroebnerBasis:
    return I.gb(order, budget)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def equal_ideals(I: Ideal, J: Ideal) -> bool:
    return I == J


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b, raising ValueError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    key = grevlex_key
    lmb, lcb = b.leading(key)
    f = dict(a.terms)
    q: dict = {}
    bt = b.terms
    while f:
        m = max(f, key=key)
        if not _divides(lmb, m):
            raise ValueError("inexact polynomial division")
        c = f[m] / lcb
        d = tuple(map(sub, m, lmb))
        q[d] = c
        for gm, gc in bt.items():
            mm = tuple(map(add, d, gm))
            v = f.get(mm, 0) - c * gc
            if v:
                f[mm] = v
            else:
                f.pop(mm, None)
    return Polynomial(a.nvars, q)


def _extend(polys: Iterable[Polynomial], nvars: int) -> list[Polynomial]:
    return [p.embed(nvars) for p in polys]


def _restrict(polys: Iterable[Polynomial], nvars: int) -> list[Polynomial]:
    out = []
    for p in polys:
        if any(any(m[nvars:]) for m in p.terms):
            continue
        out.append(Polynomial(nvars, {m[:nvars]: c for m, c in p.terms.items()}))
    return out


def eliminate(I: Ideal, variables: Iterable[int]) -> Ideal:
    """I intersected with the subring of the remaining variables."""
    ev = sorted(set(variables))
    if not ev:
        return I
    gb = I.gb(elimination_order(ev))
    keep = [p for p in gb.polys if not (p.variables() & set(ev))]
    return Ideal(keep, I.nvars)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    n = I.nvars
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1)
    gens = [t * g for g in _extend(I.gens, n + 1)] + [(one - t) * g for g in _extend(J.gens, n + 1)]
    big = Ideal(gens, n + 1)
    gb = big.gb(elimination_order([n]))
    return Ideal(_restrict(gb.polys, n), n)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def quotient_poly(I: Ideal, f: Polynomial) -> Ideal:
    if f.is_zero():
        return Ideal.unit(I.nvars)
    inter = intersect(I, Ideal([f], I.nvars))
    return Ideal([divide_exact(g, f) for g in inter.gens], I.nvars)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    if not J.gens:
        return Ideal.unit(I.nvars)
    return intersect_all([quotient_poly(I, f) for f in J.gens])


def _permute(p: Polynomial, perm: Sequence[int]) -> Polynomial:
    return p.embed(p.nvars, perm)


def saturate_variable(I: Ideal, i: int) -> Ideal:
    """I : x_i^oo for homogeneous I (x_i made the smallest grevlex variable)."""
    n = I.nvars
    perm = list(range(n))
    perm[0], perm[i] = perm[i], perm[0]
    J = Ideal([_permute(g, perm) for g in I.gens], n)
    out = []
    for g in J.gb().polys:
        e = min(m[0] for m in g.terms)
        if e:
            g = Polynomial(n, {(m[0] - e,) + m[1:]: c for m, c in g.terms.items()})
        out.append(_permute(g, perm))
    return Ideal(out, n)


def saturate_poly(I: Ideal, f: Polynomial) -> Ideal:
    n = I.nvars
    if f.is_constant() and not f.is_zero():
        return I
    vs = f.variables()
    if I.homogeneous and len(f.terms) == 1 and len(vs) >= 1:
        out = I
        for v in sorted(vs):
            out = saturate_variable(out, v)
        return out
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1)
    gens = _extend(I.gens, n + 1) + [one - t * f.embed(n + 1)]
    gb = Ideal(gens, n + 1).gb(elimination_order([n]))
    return Ideal(_restrict(gb.polys, n), n)


def _is_irrelevant(J: Ideal) -> bool:
    n = J.nvars
    return J == Ideal.irrelevant(n)


def saturate_irrelevant(I: Ideal) -> Ideal:
    """I : (x_0..x_N)^oo for a homogeneous ideal."""
    n = I.nvars
    if I.is_unit():
        return I
    if not I.gens:
        return I
    parts = []
    for i in range(n):
        Ji = saturate_variable(I, i)
        if Ji == I:
            return I.reduced()
        if not Ji.is_unit():
            parts.append(Ji)
    if not parts:
        return Ideal.unit(n)
    uniq: list[Ideal] = []
    for J in parts:
        if not any(J == K for K in uniq):
            uniq.append(J)
    minimal = [J for J in uniq if not any(K is not J and J.contains_ideal(K) for K in uniq)]
    return intersect_all(minimal).reduced()


def saturate(I: Ideal, J: Ideal) -> Ideal:
    if not J.gens:
        return I
    if I.homogeneous and _is_irrelevant(J):
        return saturate_irrelevant(I)
    return intersect_all([saturate_poly(I, f) for f in J.gens])


def sum_ideals(ideals: Iterable[Ideal], nvars: int) -> Ideal:
    gens = []
    for I in ideals:
        gens.extend(I.gens)
    return Ideal(gens, nvars)
