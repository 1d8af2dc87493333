from types import SimpleNamespace

import pytest

from multest.groebner import Ideal, ResourceError
from multest.hilbert import dim_degree
from multest.models import LEFT, RIGHT
from multest.poly import parse_poly
from multest.search import (ObstructionReport, Scenario, ScenarioError, bezout_check,
                            chain_search, constants, coset_count, length_at_point, normal_core,
                            orbit_ideal, separating_polynomial, stabilizer, tau, verify_bound)


def ideal(model, *texts):
    return Ideal([parse_poly(t, model.nvars) for t in texts], model.nvars)


def test_constants_builtins(gm, gl2):
    c = constants(gm)
    assert (c.n, c.c5, c.c7, c.degG) == (1, 1, 1, 1)
    assert (c.c1, c.c2, c.c3, c.c4) == (1, 1, 1, 1)
    c = constants(gl2)
    assert (c.n, c.degG, c.c1, c.c2) == (4, 1, 1, 1)


def test_constants_padding_exponent_two():
    fake = SimpleNamespace(n=1, c5=2, c6=2, c7=3, iG=Ideal([], 2))
    c = constants(fake)
    assert c.c3 == 8 * 3 * 1 and c.c1 == 4 * 3


def test_separating_polynomial(gm):
    full = Ideal([], 2)
    assert separating_polynomial([gm.point(1), gm.point(2)], full) == parse_poly(
        "(x1-x0)*(x1-2*x0)", 2)
    assert separating_polynomial([gm.identity], full) == parse_poly("x1-x0", 2)


@pytest.mark.parametrize("gens,expected", [
    (["(x1-x0)^2"], 2), (["x1-x0"], 1), (["(x1-x0)^2", "x1*(x1-x0)"], 1),
])
def test_length_at_identity(gm, gens, expected):
    assert length_at_point(ideal(gm, *gens), gm.identity.projective, gm) == expected


@pytest.mark.parametrize("gens,D,lhs", [
    (["(x1-x0)^2"], 2, 2), (["x1-x0"], 2, 1), (["(x1-x0)*(x1-2*x0)"], 2, 2),
])
def test_bezout_p1(gm, gens, D, lhs):
    rep = bezout_check(ideal(gm, *gens), gm, D)
    assert rep.lhs == lhs and rep.rhs == 2 and rep.holds


def test_bezout_excludes_boundary(gm):
    rep = bezout_check(ideal(gm, "x0*x1"), gm, 2)
    assert rep.lhs == 0 and rep.holds


def test_bezout_nonrational_point(gm):
    assert bezout_check(ideal(gm, "x1^2+x0^2"), gm, 2).lhs == 2


def test_tau_and_cosets_gm(gm):
    pt = ideal(gm, "x1-x0")
    assert tau(pt, "full", gm) == 1
    assert tau(Ideal([], 2), "full", gm) == 0
    sigma = gm.sigma_generate([gm.identity, gm.point(2)], 2)
    assert coset_count(pt, sigma, LEFT, gm) == 3
    assert coset_count(Ideal([], 2), sigma, LEFT, gm) == 1


def test_borel2_unipotent_subgroup(borel2):
    U = orbit_ideal(borel2.subalgebra("nilpotent"), borel2)
    assert dim_degree(U).dim == 1
    assert tau(U, "nilpotent", borel2) == 0
    assert tau(U, "full", borel2) == 2
    torus = borel2.parse_point([2, 0, 3])
    assert coset_count(U, [borel2.identity, torus], RIGHT, borel2) == 2


def test_normal_core_abelian_unchanged(gm):
    V = ideal(gm, "x1-x0")
    res = normal_core(V, gm)
    assert res.ideal == V and res.rounds == 1 and res.invariance == "certified"


def test_normal_core_unipotent_is_normal(borel2):
    U = orbit_ideal(borel2.subalgebra("nilpotent"), borel2)
    res = normal_core(U, borel2)
    assert res.ideal == U and res.invariance == "certified"


def test_normal_core_shrinks_torus(borel2):
    V = orbit_ideal(borel2.subalgebra("torus1"), borel2)
    res = normal_core(V, borel2)
    assert res.rounds <= 3
    assert dim_degree(res.ideal).dim < dim_degree(V).dim
    assert all(res.ideal.contains(f) for f in V.gens)


def test_normal_core_budget_reports_partial(borel2):
    V = orbit_ideal(borel2.subalgebra("torus1"), borel2)
    with pytest.raises(ResourceError) as err:
        normal_core(V, borel2, rounds=1, per_round=1)
    assert err.value.partial.invariance == "unverified-invariance"


def test_stabilizers(gm, borel2):
    assert stabilizer(ideal(gm, "x1-x0"), gm).ideal == ideal(gm, "x1-x0")
    assert stabilizer(Ideal([], 2), gm).ideal.is_zero()
    U = orbit_ideal(borel2.subalgebra("nilpotent"), borel2)
    assert stabilizer(U, borel2).ideal == U


def test_flagship_equality_case(gm):
    s = Scenario.build(gm, "(x1-x0)^4", "full", [1], S=1, T=3, D=4, theorem=2)
    rep = chain_search(s)
    assert rep.W == ideal(gm, "x1-x0")
    assert (rep.dim, rep.deg, rep.N, rep.tau) == (0, 1, 1, 1)
    assert rep.bound_lhs == rep.bound_rhs == 4
    assert rep.ok and verify_bound(rep, constants(gm))


def test_failed_order_hypothesis(gm):
    s = Scenario.build(gm, "x0", "full", [1], S=0, T=0, D=1, theorem=2)
    with pytest.raises(ScenarioError):
        chain_search(s)


def test_verify_bound_degenerate_report(gm):
    rep = ObstructionReport(2, Ideal([], 2), 1, 1, True, False, 1, 0, 1, 1, [], 1, 3, 4, 1,
                            [1], {"ok": True})
    assert verify_bound(rep, constants(gm))
    bad = ObstructionReport(2, Ideal([], 2), 1, 2, True, False, 1, 0, 2, 1, [], 1, 3, 4, 1,
                            [2], {"ok": True})
    assert not verify_bound(bad, constants(gm))


@pytest.mark.parametrize("theorem", [1, 3])
def test_borel2_dimension_forcing(borel2, theorem):
    s = Scenario.build(borel2, "(x1-x4)^2", "nilpotent", [[1, 0, 1]], S=1, T=1, D=2,
                       theorem=theorem, d0=1)
    rep = chain_search(s)
    assert any(step.separators for step in rep.chain)
    assert rep.dim <= 1 and rep.conclusions["dimension_at_most_d0"]
    assert rep.W == orbit_ideal(borel2.subalgebra("nilpotent"), borel2)
    assert rep.ok and verify_bound(rep, constants(borel2))


def test_theorem1_requires_d0(borel2):
    s = Scenario.build(borel2, "(x1-x4)^2", "nilpotent", [[1, 0, 1]], S=1, T=1, D=2, theorem=1)
    with pytest.raises(ScenarioError):
        chain_search(s)
