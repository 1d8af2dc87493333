"""Minimal primes at desk scale, by factoring and splitting.

Factorization over the rationals is delegated to sympy; everything else
runs on the local Groebner engine.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import sympy
from gmpy2 import mpq

from .groebner import Ideal, ResourceError, eliminate
from .hilbert import dim_degree
from .poly import Polynomial

_FACTOR_CACHE: dict = {}


def _to_sympy(p: Polynomial, gens):
    return sympy.Poly.from_dict(
        {m: sympy.Rational(int(c.numerator), int(c.denominator)) for m, c in p.terms.items()},
        *gens, domain="QQ")


def _from_sympy(sp, nvars: int) -> Polynomial:
    return Polynomial(nvars, {m: mpq(int(c.p), int(c.q)) for m, c in sp.as_dict().items()})


def factor(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Irreducible factors over Q with multiplicities, monic, deterministic order."""
    hit = _FACTOR_CACHE.get(p)
    if hit is not None:
        return hit
    if p.degree <= 1:
        out = [(p.monic(), 1)] if p.degree == 1 else []
    else:
        gens = sympy.symbols(f"z0:{p.nvars}")
        _, fl = _to_sympy(p, gens).factor_list()
        out = [(_from_sympy(f, p.nvars).monic(), k) for f, k in fl if f.total_degree() > 0]
        out.sort(key=lambda t: (t[0].degree, t[0].to_str()))
    _FACTOR_CACHE[p] = out
    return out


def vanishes_at(I: Ideal, point: Sequence) -> bool:
    return all(not g.evaluate(point) for g in I.gens)


class PrimeComponents(list):
    """List of prime ideals; ``flagged`` holds pieces whose primality is unverified."""

    def __init__(self, items=(), flagged=()):
        super().__init__(items)
        self.flagged = list(flagged)


def _linear_split(gb_polys):
    lin = [g for g in gb_polys if g.degree == 1]
    nonlin = [g for g in gb_polys if g.degree > 1]
    return lin, nonlin


def is_prime_desk(I: Ideal) -> bool:
    """Accept linear forms plus at most one irreducible polynomial."""
    if I.is_unit():
        return False
    lin, nonlin = _linear_split(I.gb().polys)
    if len(nonlin) > 1:
        return False
    if nonlin:
        fl = factor(nonlin[0])
        return len(fl) == 1 and fl[0][1] == 1
    return True


def _factor_split(J: Ideal):
    """Split on the first reducible basis element: list of factors, or None."""
    for g in J.gb().polys:
        if g.degree <= 1:
            continue
        fl = factor(g)
        if len(fl) > 1 or (fl and fl[0][1] > 1):
            return [f for f, _ in fl]
    return None


def _projection_split(J: Ideal):
    """Factor eliminants onto pairs of free variables."""
    lin, nonlin = _linear_split(J.gb().polys)
    bound = set()
    for g in lin:
        bound.add(max(g.variables(), key=lambda i: i))
    free = sorted(set().union(*(g.variables() for g in nonlin)) - bound) if nonlin else []
    n = J.nvars
    for a, b in combinations(free, 2):
        E = eliminate(J, [i for i in range(n) if i not in (a, b)])
        for h in E.gens:
            fl = factor(h)
            facs = [f for f, _ in fl]
            if len(facs) > 1 or (facs and fl[0][1] > 1):
                if any(J.contains(f) for f in facs):
                    continue
                return facs
    return None


def minimal_primes(I: Ideal, through: Sequence | None = None, budget: int = 400) -> PrimeComponents:
    """Minimal primes of a homogeneous ideal with nonempty zero set.

    With ``through`` only components containing that point are returned.
    Pieces that cannot be certified prime are returned and also flagged."""
    primes: list[Ideal] = []
    flagged: list[Ideal] = []
    stack = [I]
    steps = 0
    while stack:
        steps += 1
        if steps > budget:
            raise ResourceError("minimal prime decomposition budget exhausted")
        J = stack.pop()
        if through is not None and not vanishes_at(J, through):
            continue
        if dim_degree(J).dim < 0:
            continue
        facs = _factor_split(J)
        if facs is None and not is_prime_desk(J):
            facs = _projection_split(J)
        if facs is None:
            (primes if is_prime_desk(J) else flagged).append(J.reduced())
            continue
        if through is not None:
            facs = [f for f in facs if not f.evaluate(through)]
        for f in reversed(facs):
            stack.append(J + Ideal([f], J.nvars))
    return _prune(primes, flagged)


def _prune(primes: list[Ideal], flagged: list[Ideal]) -> PrimeComponents:
    uniq: list[Ideal] = []
    for P in primes + flagged:
        if not any(P == Q for Q in uniq):
            uniq.append(P)
    keep = [P for P in uniq if not any(Q is not P and P.contains_ideal(Q) for Q in uniq)]
    keep.sort(key=lambda P: (-dim_degree(P).dim, P.basis_str()))
    fl = [P for P in keep if any(P == F for F in flagged)]
    return PrimeComponents(keep, fl)
