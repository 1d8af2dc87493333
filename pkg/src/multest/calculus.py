"""Operator calculus on homogeneous ideals: translations, invariant derivations, jet ideals.

Words in U(b) are PBW exponent tuples (t1, ..., td).  Following the convention
used throughout, the word D1^t1 ... Dd^td acts by applying D1 t1 times first,
then D2, and so on.  Translation and jet ideals are built from generators only:
substitution is a ring map and derivations obey Leibniz, so generator images
generate the same ideal modulo the closure ideal.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from . import linalg
from .groebner import Ideal, intersect, saturate_irrelevant, saturate_poly
from .hilbert import zero_set_empty
from .models import (LEFT, RIGHT, BiPolynomial, DerivationWord, GroupModel, GroupPoint,
                     LieSubalgebra, StabilityError)
from .poly import Polynomial, grevlex_key

JET_VARIANTS = ("B", "C", "D", "E")


def interesting_part(I: Ideal) -> Ideal:
    """Intersection of the primary components of I with nonempty zero set."""
    return saturate_irrelevant(I)


def words_up_to(d: int, T: int) -> list[tuple[int, ...]]:
    """All PBW exponent tuples of total at most T, in lexicographic order."""
    if T < 0:
        return []
    return sorted(w for w in product(range(T + 1), repeat=d) if sum(w) <= T)


def words_of_total(d: int, T: int) -> list[tuple[int, ...]]:
    return [w for w in words_up_to(d, T) if sum(w) == T]


def full_algebra(model: GroupModel) -> LieSubalgebra:
    d = model.lie.d_full
    return model.make_subalgebra([[1 if i == j else 0 for j in range(d)] for i in range(d)],
                                 name="full")


def _resolve(model: GroupModel, b: LieSubalgebra | str | None) -> LieSubalgebra:
    if b is None:
        return full_algebra(model)
    if isinstance(b, str):
        return model.subalgebra(b)
    return b


def _compress(polys: Iterable[Polynomial], nvars: int) -> list[Polynomial]:
    """Basis of the span of homogeneous polynomials, degree by degree."""
    by_deg: dict[int, list[Polynomial]] = {}
    rest = []
    for p in polys:
        if not p:
            continue
        if p.is_homogeneous():
            by_deg.setdefault(p.degree, []).append(p)
        else:
            rest.append(p)
    out = []
    for deg in sorted(by_deg):
        group = list(dict.fromkeys(by_deg[deg]))
        if len(group) == 1:
            out.append(group[0])
            continue
        mons = sorted({m for p in group for m in p.terms}, key=grevlex_key, reverse=True)
        idx = {m: i for i, m in enumerate(mons)}
        rows = []
        for p in group:
            r = [mpq(0)] * len(mons)
            for m, c in p.terms.items():
                r[idx[m]] = c
            rows.append(r)
        red, piv = linalg.rref(rows)
        for r in red[:len(piv)]:
            out.append(Polynomial(nvars, {mons[i]: c for i, c in enumerate(r) if c}))
    return out + rest


def _ideal(polys: Iterable[Polynomial], model: GroupModel) -> Ideal:
    n1 = model.nvars
    return Ideal(_compress(list(polys) + list(model.iG.gens), n1), n1)


# ---- translations ---------------------------------------------------------

def translate_gens(I: Ideal, g: GroupPoint, side: str, model: GroupModel) -> list[Polynomial]:
    tr = model.translate_left if side == LEFT else model.translate_right
    return [tr(P, g) for P in I.gens]


def translate_ideal(I: Ideal, g: GroupPoint, side: str, model: GroupModel) -> Ideal:
    """In of the translated generators together with the closure ideal.

    Left: zero set is g^-1 times the zero set of I; right: zero set times g^-1."""
    return interesting_part(_ideal(translate_gens(I, g, side, model), model))


# ---- derivation operators --------------------------------------------------

def _tables(model: GroupModel, b: LieSubalgebra, k: int, nvars: int, offset: int):
    """Combined tables for each basis vector of b, embedded at ``offset`` in a ring."""
    cache = model.__dict__.setdefault("_table_cache", {})
    key = (b.basis, k, nvars, offset)
    if key not in cache:
        n1 = model.nvars
        pos = list(range(offset, offset + n1))
        out = []
        for v in b.basis:
            q = [Polynomial.zero(n1)] * n1
            for j, c in enumerate(v):
                if c:
                    q = [a + t.scale(c) for a, t in zip(q, model.lie.q_tables[(j, k)])]
            out.append([p.embed(nvars, pos) for p in q])
        cache[key] = out
    return cache[key]


def _derive(f: Polynomial, table: Sequence[Polynomial], offset: int) -> Polynomial:
    out = Polynomial.zero(f.nvars)
    for l, q in enumerate(table):
        if q:
            df = f.diff(offset + l)
            if df:
                out = out + df * q
    return out


def _word_tree(start, step: Callable, d: int, T: int) -> dict:
    """Values of every word of total <= T; step(state, letter) applies one letter.

    Letters are applied in increasing index order, so each word is reached once."""
    out = {(0,) * d: start}
    frontier = [((0,) * d, 0, start)]
    for _ in range(T):
        nxt = []
        for w, last, val in frontier:
            for i in range(last, d):
                nv = step(val, i)
                nw = w[:i] + (w[i] + 1,) + w[i + 1:]
                out[nw] = nv
                nxt.append((nw, i, nv))
        frontier = nxt
    return out


def _as_combination(word) -> dict:
    if isinstance(word, DerivationWord):
        return {word.exponents: mpq(1)}
    if isinstance(word, tuple):
        return {word: mpq(1)}
    return dict(word)


def _apply_word(word, f: Polynomial, tables, offset: int) -> Polynomial:
    out = Polynomial.zero(f.nvars)
    for exps, c in _as_combination(word).items():
        v = f
        for letter in DerivationWord(tuple(exps)).letters():
            v = _derive(v, tables[letter], offset)
        out = out + v.scale(c)
    return out


def op_D(word, f: BiPolynomial, model: GroupModel, b=None) -> BiPolynomial:
    """Derivation word acting on the y block with the chart-0 tables."""
    b = _resolve(model, b)
    tabs = _tables(model, b, 0, f.nvars, model.nvars)
    return BiPolynomial(f.nvars, _apply_word(word, f, tabs, model.nvars).terms)


def op_Bk(word, e: Polynomial, k: int, model: GroupModel, b=None) -> Polynomial:
    """Derivation word acting on x with the chart-k tables."""
    b = _resolve(model, b)
    return _apply_word(word, e, _tables(model, b, k, e.nvars, 0), 0)


# ---- polynomial families ---------------------------------------------------

def _right_chart_composite(P: Polynomial, model: GroupModel, chart) -> BiPolynomial:
    nv = 2 * model.nvars
    imgs = [Polynomial(nv, t.terms) for t in chart.polys]
    return BiPolynomial(nv, P.substitute(imgs).terms)


def family_E(P: Polynomial, model: GroupModel, b: LieSubalgebra, T: int) -> dict:
    """word -> [P_{word,alpha} for each right chart alpha]."""
    one = model.identity.normalized()
    n1 = model.nvars
    out: dict = {}
    for chart in model.chartsR:
        f = _right_chart_composite(P, model, chart)
        tabs = _tables(model, b, 0, 2 * n1, n1)
        vals = _word_tree(f, lambda v, i: _derive(v, tabs[i], n1), b.d, T)
        for w in sorted(vals):
            out.setdefault(w, []).append(BiPolynomial(2 * n1, vals[w].terms).specialize_y(one))
    return out


def family_C(P: Polynomial, model: GroupModel, b: LieSubalgebra, T: int, k: int) -> dict:
    """word -> B_k(word)(P)."""
    tabs = _tables(model, b, k, model.nvars, 0)
    vals = _word_tree(P, lambda v, i: _derive(v, tabs[i], 0), b.d, T)
    return {w: vals[w] for w in sorted(vals)}


def family_D(P: Polynomial, model: GroupModel, b: LieSubalgebra, T: int, k: int) -> dict:
    """word -> [numerator of D(word)(P(T_R)/T_R,k^deg P) over T_R,k^(deg P + |word|)]."""
    one = model.identity.normalized()
    n1 = model.nvars
    nv = 2 * n1
    D = P.degree
    out: dict = {}
    for chart in model.chartsR:
        f = _right_chart_composite(P, model, chart)
        Tk = Polynomial(nv, chart.polys[k].terms)
        tabs = _tables(model, b, 0, nv, n1)
        dTk = [_derive(Tk, tabs[i], n1) for i in range(b.d)]

        def step(state, i):
            num, m = state
            return (_derive(num, tabs[i], n1) * Tk - num * dTk[i].scale(m), m + 1)

        vals = _word_tree((f, D), step, b.d, T)
        for w in sorted(vals):
            out.setdefault(w, []).append(BiPolynomial(nv, vals[w][0].terms).specialize_y(one))
    return out


def family_B(P: Polynomial, model: GroupModel, b: LieSubalgebra, T: int) -> list[Polynomial]:
    """All iterated single-letter derivatives with arbitrary charts, up to length T."""
    n1 = model.nvars
    tabs = {k: _tables(model, b, k, n1, 0) for k in range(n1)}
    out = []
    layer = [P]
    for _ in range(T):
        nxt = []
        for v in layer:
            for k in range(n1):
                for i in range(b.d):
                    nxt.append(_derive(v, tabs[k][i], 0))
        layer = _compress(nxt, n1)
        out.extend(layer)
    return out


def p_family(P: Polynomial, word, model: GroupModel, variant: str = "E", k: int = 0,
             b=None, charts: Sequence[int] | None = None):
    """One member of a family for a single word.

    E: P_{word,alpha}; C: B_k(word)(P); D: P^(k)_{word,alpha};
    B: ``word`` is a sequence of (letter, chart) pairs applied left to right."""
    b = _resolve(model, b)
    if variant == "B":
        v = P
        for letter, kk in word:
            v = _derive(v, _tables(model, b, kk, model.nvars, 0)[letter], 0)
        return v
    exps = word.exponents if isinstance(word, DerivationWord) else tuple(word)
    T = sum(exps)
    if variant == "C":
        return op_Bk(exps, P, k, model, b)
    fam = family_E(P, model, b, T) if variant == "E" else family_D(P, model, b, T, k)
    vals = fam[exps]
    return vals[charts[0]] if charts else vals[0]


def jet_generators(I: Ideal, T: int, variant: str, model: GroupModel, b=None) -> list[Polynomial]:
    b = _resolve(model, b)
    n1 = model.nvars
    gens: list[Polynomial] = []
    for P in I.gens:
        if variant == "E":
            for vals in family_E(P, model, b, T).values():
                gens.extend(vals)
        elif variant == "C":
            for k in range(n1):
                gens.extend(family_C(P, model, b, T, k).values())
        elif variant == "D":
            for k in range(n1):
                for vals in family_D(P, model, b, T, k).values():
                    gens.extend(vals)
        elif variant == "B":
            gens.append(P)
            gens.extend(family_B(P, model, b, T))
        else:
            raise ValueError(f"unknown jet variant {variant!r}")
    return gens


def jet_ideal(I: Ideal, T: int, variant: str, model: GroupModel, b=None) -> Ideal:
    """In of a jet family of order T together with the closure ideal."""
    return interesting_part(_ideal(jet_generators(I, T, variant, model, b), model))


def partial_generators(I: Ideal, g: GroupPoint, T: int, side: str, model: GroupModel,
                       b=None) -> list[Polynomial]:
    b = _resolve(model, b)
    tr = model.translate_left if side == LEFT else model.translate_right
    out = []
    for P in I.gens:
        for vals in family_E(P, model, b, T).values():
            out.extend(tr(v, g) for v in vals)
    return out


def partial_ideal(I: Ideal, g: GroupPoint, T: int, side: str, model: GroupModel, b=None,
                  require_stable: bool = False) -> Ideal:
    """Translated jet generators plus the closure ideal (no saturation)."""
    b = _resolve(model, b)
    if require_stable and side == RIGHT and not model.ad_stable(g, b):
        raise StabilityError(f"Ad({g}) does not preserve {b.name}")
    return _ideal(partial_generators(I, g, T, side, model, b), model)


def partial_degree_bound(I: Ideal, model: GroupModel) -> int:
    return model.c5 ** 2 * max(I.max_degree(), model.c7)


# ---- identity suite --------------------------------------------------------

def _same_zero_set(I: Ideal, J: Ideal) -> bool:
    """Z(I) = Z(J) as projective sets."""
    def inside(A, B):   # Z(A) contained in Z(B)
        return all(zero_set_empty(saturate_poly(A, f)) for f in B.gens)
    return inside(I, J) and inside(J, I)


def _vanish(I: Ideal, g: GroupPoint) -> bool:
    return all(not p.evaluate(g.projective.coords) for p in I.gens)


def chart_change_tables(P: Polynomial, model: GroupModel, b: LieSubalgebra) -> bool:
    """x_k^(c6-1) P^D_l - x_l^(c6-1) P^D_k - deg P (x_k)^D_l x_k^(c6-2) P lies in the closure ideal."""
    n1 = model.nvars
    xs = [Polynomial.variable(n1, i) for i in range(n1)]
    c6, D = model.c6, P.degree
    for i in range(b.d):
        w = tuple(1 if t == i else 0 for t in range(b.d))
        Pk = [op_Bk(w, P, k, model, b) for k in range(n1)]
        for k in range(n1):
            for l in range(n1):
                xkl = op_Bk(w, xs[k], l, model, b)
                expr = (xs[k] ** (c6 - 1) * Pk[l] - xs[l] ** (c6 - 1) * Pk[k]
                        - (xkl * xs[k] ** (c6 - 2) * P).scale(D))
                if not model.iG.contains(expr):
                    return False
    return True


def chart_change_quotient(P: Polynomial, model: GroupModel, b: LieSubalgebra) -> bool:
    """Chart-change rule for the quotient family, base point 1, cleared of denominators."""
    n1 = model.nvars
    one = model.identity.normalized()
    D = P.degree
    if D == 0:
        return True
    xs = [Polynomial.variable(n1, i) for i in range(n1)]
    for ci, chart in enumerate(model.chartsR):
        base = [p.specialize_y(one) for p in chart.polys]
        PT = P.substitute(base)
        for i in range(b.d):
            w = tuple(1 if t == i else 0 for t in range(b.d))
            fam = [family_D(P, model, b, 1, k)[w][ci] for k in range(n1)]
            for k in range(n1):
                xkD = [family_D(xs[k] ** D, model, b, 1, l)[w][ci] for l in range(n1)]
                for l in range(n1):
                    expr = (base[k] ** D * fam[l] - base[l] * base[k] ** (D - 1) * fam[k]
                            - xkD[l] * PT)
                    if not model.iG.contains(expr):
                        return False
    return True


def chart_independence(P: Polynomial, model: GroupModel, b: LieSubalgebra) -> bool:
    """Chart-independence of the E family at base point 1."""
    n1 = model.nvars
    one = model.identity.normalized()
    D = P.degree
    xs = [Polynomial.variable(n1, i) for i in range(n1)]
    charts = model.chartsR
    for i in range(b.d):
        w = tuple(1 if t == i else 0 for t in range(b.d))
        fam = family_E(P, model, b, 1)[w]
        for k in range(n1):
            xk = family_E(xs[k] ** D, model, b, 1)[w]
            for a in range(len(charts)):
                for c in range(len(charts)):
                    ba = [p.specialize_y(one) for p in charts[a].polys]
                    bc = [p.specialize_y(one) for p in charts[c].polys]
                    expr = (ba[k] ** D * fam[c] - bc[k] ** D * fam[a]
                            + xk[a] * P.substitute(bc) - xk[c] * P.substitute(ba))
                    if not model.iG.contains(expr):
                        return False
    return True


def identity_suite(model: GroupModel, b=None, instances: Sequence[Mapping] = ()) -> list[dict]:
    """Check the ideal identities on instances with keys I, g, h, T, T2 (and optional J)."""
    b = _resolve(model, b)
    n1 = model.nvars
    report = []

    def record(name, idx, ok):
        report.append({"identity": name, "instance": idx, "passed": bool(ok)})

    irr2 = Ideal([Polynomial.variable(n1, i) * Polynomial.variable(n1, j)
                  for i in range(n1) for j in range(i, n1)], n1)
    for idx, inst in enumerate(instances):
        I = inst["I"]
        g, h = inst.get("g", model.identity), inst.get("h", model.identity)
        T, T2 = inst.get("T", 1), inst.get("T2", 1)
        J = inst.get("J") or translate_ideal(I, g, LEFT, model)
        InI = interesting_part(I)
        InJ = interesting_part(J)
        # ideals with empty zero set do not change In
        record("in-ignores-irrelevant", idx, InI == interesting_part(intersect(I, irr2)) == interesting_part(I * irr2))
        record("in-intersection", idx, interesting_part(intersect(I, J)) == intersect(InI, InJ))
        record("in-sum", idx, interesting_part(I + J) == interesting_part(InI + InJ))
        record("in-idempotent", idx, interesting_part(InI) == InI)
        record("in-zero-set", idx, _same_zero_set(InI, I))
        record("in-sum-irrelevant-product", idx, interesting_part(I + J) == interesting_part(I + J * irr2))
        # translations
        tl = translate_ideal(I, g, LEFT, model)
        tr = translate_ideal(I, g, RIGHT, model)
        gi = model.point_inv(g)
        pts = inst.get("points", [])
        ok = all(_vanish(I, z) == _vanish(tl, model.point_mul(gi, z)) and
                 _vanish(I, z) == _vanish(tr, model.point_mul(z, gi)) for z in pts)
        record("translation-zero-sets", idx, ok)
        record("translation-of-in", idx, translate_ideal(InI, g, LEFT, model) == tl
               and translate_ideal(InI, g, RIGHT, model) == tr)
        record("left-translation-composition", idx, translate_ideal(tl, h, LEFT, model)
               == translate_ideal(I, model.point_mul(g, h), LEFT, model))
        record("right-translation-composition", idx, translate_ideal(tr, h, RIGHT, model)
               == translate_ideal(I, model.point_mul(h, g), RIGHT, model))
        record("left-right-translations-commute", idx, translate_ideal(tl, h, RIGHT, model)
               == translate_ideal(translate_ideal(I, h, RIGHT, model), g, LEFT, model))
        base = interesting_part(_ideal(I.gens, model))
        record("identity-translation", idx, translate_ideal(I, model.identity, LEFT, model) == base
               == translate_ideal(I, model.identity, RIGHT, model))
        # derivation identities
        record("chart-change-tables", idx, all(chart_change_tables(P, model, b) for P in I.gens))
        record("chart-change-quotient", idx, all(chart_change_quotient(P, model, b) for P in I.gens))
        record("chart-independence", idx, all(chart_independence(P, model, b) for P in I.gens))
        jets = {v: jet_ideal(I, T, v, model, b) for v in JET_VARIANTS}
        record("jets-B-equals-C", idx, jets["B"] == jets["C"])
        record("jets-C-equals-D", idx, jets["C"] == jets["D"])
        record("jets-D-equals-E", idx, jets["D"] == jets["E"])
        E = jets["E"]
        record("jets-of-in", idx, jet_ideal(InI, T, "E", model, b) == E)
        record("jets-compose", idx, jet_ideal(I, T + T2, "E", model, b)
               == jet_ideal(jet_ideal(I, T2, "E", model, b), T, "E", model, b))
        dl = partial_ideal(I, g, T, LEFT, model, b)
        record("left-partial-three-way", idx, translate_ideal(E, g, LEFT, model) == interesting_part(dl)
               == jet_ideal(tl, T, "E", model, b))
        bound = partial_degree_bound(I, model)
        record("partial-degree-bound", idx, dl.max_degree() <= bound)
        stable_g = model.ad_stable(g, b)
        stable_h = model.ad_stable(h, b)
        if stable_g:
            dr = partial_ideal(I, g, T, RIGHT, model, b)
            record("right-partial-three-way", idx, translate_ideal(E, g, RIGHT, model) == interesting_part(dr)
                   == jet_ideal(tr, T, "E", model, b))
        gh = model.point_mul(g, h)
        lhs = interesting_part(partial_ideal(partial_ideal(I, g, T, LEFT, model, b),
                                             h, T2, LEFT, model, b))
        record("left-partial-compose", idx, lhs == interesting_part(partial_ideal(I, gh, T + T2, LEFT, model, b)))
        if stable_g and stable_h:
            hg = model.point_mul(h, g)
            lhs = interesting_part(partial_ideal(partial_ideal(I, g, T, RIGHT, model, b),
                                                 h, T2, RIGHT, model, b))
            record("right-partial-compose", idx,
                   lhs == interesting_part(partial_ideal(I, hg, T + T2, RIGHT, model, b)))
        if stable_h:
            a = interesting_part(partial_ideal(partial_ideal(I, g, T, LEFT, model, b),
                                               h, T2, RIGHT, model, b))
            c = interesting_part(partial_ideal(partial_ideal(I, h, T2, RIGHT, model, b),
                                               g, T, LEFT, model, b))
            record("left-right-partials-commute", idx, a == c)
    return report
