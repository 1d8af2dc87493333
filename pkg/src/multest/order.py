"""Vanishing order of a polynomial along a subalgebra, directly and through ideals."""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import _resolve, _tables, _word_tree, _derive, partial_generators, words_up_to
from .corpus import ORACLE_DATA
from .groebner import Ideal
from .models import LEFT, RIGHT, DerivationWord, DomainError, GroupModel, GroupPoint
from .poly import Polynomial, parse_poly

DEFAULT_TMAX = 6


@dataclass(frozen=True)
class OrderResult:
    value: int | None            # None when only a lower bound is known
    witness: DerivationWord | None
    tmax: int

    @property
    def finite(self) -> bool:
        return self.value is not None

    def exceeds(self, T: int) -> bool:
        """True when the order is known to be > T."""
        return self.value > T if self.finite else self.tmax >= T

    def __str__(self):
        return str(self.value) if self.finite else f">= {self.tmax + 1}"


def enumerate_words(b, T: int) -> list[DerivationWord]:
    """Every PBW word of total at most T, in lexicographic exponent order."""
    d = b if isinstance(b, int) else b.d
    return [DerivationWord(w) for w in words_up_to(d, T)]


def ord_direct(g: GroupPoint, b, P: Polynomial, model: GroupModel,
               tmax: int = DEFAULT_TMAX) -> OrderResult:
    """Least total of a word whose chart-0 derivative of P(g * x) is nonzero at the identity."""
    b = _resolve(model, b)
    if model.iG.contains(P):
        raise DomainError("the polynomial vanishes on the whole group closure")
    F = model.translate_left(P, g)
    one = model.identity.normalized()
    tabs = _tables(model, b, 0, model.nvars, 0)
    vals = _word_tree(F, lambda v, i: _derive(v, tabs[i], 0), b.d, tmax)
    best = None
    for w in sorted(vals, key=lambda w: (sum(w), w)):
        if best is not None and sum(w) > best[0]:
            break
        if vals[w].evaluate(one):
            best = (sum(w), w)
    if best is None:
        return OrderResult(None, None, tmax)
    return OrderResult(best[0], DerivationWord(best[1]), tmax)


def ord_via_ideals(g: GroupPoint, h: GroupPoint, b, P: Polynomial, T: int,
                   model: GroupModel, side: str = LEFT) -> bool:
    """Order of P at g*h exceeds T, decided by evaluating translated jet generators.

    Left: generators translated by g, evaluated at h.  Right: translated by h, at g."""
    I = Ideal([P], model.nvars)
    if side == LEFT:
        gens, at = partial_generators(I, g, T, LEFT, model, b), h
    else:
        gens, at = partial_generators(I, h, T, RIGHT, model, b), g
    pt = at.projective.coords
    return all(not p.evaluate(pt) for p in gens)


def ord_at_all(points, b, P: Polynomial, model: GroupModel, tmax: int = DEFAULT_TMAX) -> dict:
    return {g: ord_direct(g, b, P, model, tmax) for g in points}


def oracle_agreement(model: GroupModel, tmax: int = 4) -> list[dict]:
    """Compare the direct order with both ideal-side predicates over all g, h in Sigma_2."""
    data = ORACLE_DATA.get(model.name)
    if data is None:
        return []
    b = _resolve(model, data["subalgebra"])
    pts = model.sigma_generate([model.parse_point(v) for v in data["sigma1"]], 2)
    rows = []
    for text in data["polys"]:
        P = parse_poly(text, model.nvars)
        mism = 0
        for g in pts:
            for h in pts:
                o = ord_direct(model.point_mul(g, h), b, P, model, tmax + 1)
                for T in range(tmax + 1):
                    want = o.exceeds(T)
                    for side in (LEFT, RIGHT):
                        if ord_via_ideals(g, h, b, P, T, model, side) != want:
                            mism += 1
        rows.append({"poly": str(P), "points": len(pts), "mismatches": mism,
                     "passed": mism == 0})
    return rows
