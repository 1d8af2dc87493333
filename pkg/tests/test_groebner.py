import random

import pytest
import sympy
from gmpy2 import mpq

from multest.calculus import interesting_part
from multest.groebner import (GREVLEX, LEX, Ideal, ResourceError, eliminate, equal_ideals,
                              groebner, ideal_member, intersect, quotient, saturate)
from multest.hilbert import dim_degree, zero_set_empty
from multest.poly import Polynomial, parse_poly
from multest.primes import factor, minimal_primes


def I(*texts, n=2):
    return Ideal([parse_poly(t, n) for t in texts], n)


def test_linear_basis():
    gb = groebner(I("x1-x0", "x1+x0"))
    assert sorted(p.to_str() for p in gb.polys) == ["x0", "x1"]


def test_zero_ideal_has_empty_basis():
    assert len(groebner(Ideal([], 2))) == 0


def test_principal_basis_is_monic_generator():
    gb = groebner(I("2*x1^2-4*x0*x1"))
    assert [p.to_str() for p in gb.polys] == ["x1^2 - 2*x0*x1"]


def test_membership_and_equality():
    assert ideal_member(parse_poly("x0+x1", 2), I("x0", "x1"))
    assert not ideal_member(parse_poly("x0", 2), I("x0^2"))
    assert equal_ideals(I("x0", "x1"), I("x1-x0", "x1+x0"))


def test_intersection_quotient_saturation():
    assert intersect(I("x0"), I("x1")) == I("x0*x1")
    assert quotient(I("x0^2*x1"), I("x0")) == I("x0*x1")
    assert saturate(I("x0^2*x1"), I("x0")) == I("x1")


def test_elimination():
    J = Ideal([parse_poly("x1-x2*x0", 3), parse_poly("x2-2", 3)], 3)
    assert eliminate(J, [2]) == Ideal([parse_poly("x1-2*x0", 3)], 3)
    assert eliminate(J, []) == J
    K = Ideal([parse_poly("x2*x0-1", 3)], 3)
    assert eliminate(K, [2]).is_zero()


def test_interesting_part_examples():
    assert interesting_part(I("x0", "x1")).is_unit()
    assert interesting_part(I("x0^2*x1")) == I("x0^2*x1")
    assert interesting_part(I("(x1-x0)^2", "x1*(x1-x0)")) == I("x1-x0")


def test_hilbert_data():
    assert (dim_degree(Ideal([], 2)).dim, dim_degree(Ideal([], 2)).degree) == (1, 1)
    assert (dim_degree(I("x0*x1")).dim, dim_degree(I("x0*x1")).degree) == (0, 2)
    assert (dim_degree(I("(x1-x0)^2")).dim, dim_degree(I("(x1-x0)^2")).degree) == (0, 2)
    twisted = Ideal([parse_poly(t, 4) for t in ("x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2")], 4)
    assert (dim_degree(twisted).dim, dim_degree(twisted).degree) == (1, 3)


def test_empty_zero_sets():
    assert zero_set_empty(I("x0", "x1"))
    assert not zero_set_empty(I("x0*x1"))
    assert zero_set_empty(I("x0^2", "x0*x1", "x1^3"))


def test_minimal_primes_examples():
    assert sorted(P.basis_str() for P in minimal_primes(I("x0*x1"))) == [["x0"], ["x1"]]
    assert [P.basis_str() for P in minimal_primes(I("(x1-x0)^2"))] == [["x1 - x0"]]
    J = Ideal([parse_poly("(x1-x0)*(x1-2*x0)", 3), parse_poly("x2", 3)], 3)
    primes = minimal_primes(J)
    expected = [Ideal([parse_poly("x1-x0", 3), parse_poly("x2", 3)], 3),
                Ideal([parse_poly("x1-2*x0", 3), parse_poly("x2", 3)], 3)]
    assert len(primes) == 2 and all(any(P == E for E in expected) for P in primes)
    assert not primes.flagged


def test_minimal_primes_through_point():
    J = Ideal([parse_poly("(x1-x0)*(x1-2*x0)", 3), parse_poly("x2", 3)], 3)
    primes = minimal_primes(J, through=(1, 1, 0))
    assert len(primes) == 1 and primes[0].contains(parse_poly("x1-x0", 3))


def test_factor_is_deterministic():
    fl = factor(parse_poly("x1^3-x0^2*x1", 2))
    assert [(f.to_str(), k) for f, k in fl] == [("x1", 1), ("x1 + x0", 1), ("x1 - x0", 1)]


def test_budget_exhaustion():
    J = Ideal([parse_poly(t, 4) for t in ("x0^3-x1*x2*x3", "x1^3-x0*x2^2", "x2^3-x3^2*x0")], 4)
    with pytest.raises(ResourceError):
        J.gb(budget=5)


def _sympy_gb(polys, n, order):
    gens = sympy.symbols(f"x0:{n}")
    # sympy orders variables first-is-largest; reverse to match x0 smallest
    rev = list(reversed(gens))
    exprs = [sympy.sympify(p.to_str().replace("^", "**")) for p in polys]
    G = sympy.groebner(exprs, *rev, order=order)
    return {parse_poly(str(g.as_expr()).replace("**", "^"), n).monic() for g in G.exprs}


@pytest.mark.parametrize("seed", range(6))
def test_groebner_matches_sympy(seed):
    rng = random.Random(seed)
    n = 3
    polys = []
    for _ in range(3):
        d = rng.randint(1, 3)
        terms = {}
        for _ in range(3):
            e = [0] * n
            for _ in range(d):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = mpq(rng.randint(-3, 3) or 1)
        polys.append(Polynomial(n, terms))
    ours = {p for p in Ideal(polys, n).gb(GREVLEX).polys}
    assert ours == _sympy_gb(polys, n, "grevlex")
    ours_lex = {p for p in Ideal(polys, n).gb(LEX).polys}
    assert ours_lex == _sympy_gb(polys, n, "lex")
