import pytest

from multest.calculus import (JET_VARIANTS, identity_suite, interesting_part, jet_generators,
                              jet_ideal, op_Bk, op_D, p_family, partial_ideal, translate_ideal)
from multest.corpus import suite_instances
from multest.groebner import Ideal
from multest.models import LEFT, RIGHT, GroupModel
from multest.poly import parse_bipoly, parse_poly


def ideal(model, *texts):
    return Ideal([parse_poly(t, model.nvars) for t in texts], model.nvars)


def test_interesting_part_examples(gm):
    assert interesting_part(ideal(gm, "x0", "x1")).is_unit()
    assert interesting_part(ideal(gm, "x0^2*x1")) == ideal(gm, "x0^2*x1")
    assert interesting_part(ideal(gm, "(x1-x0)^2", "x1*(x1-x0)")) == ideal(gm, "x1-x0")


def test_left_translation_of_identity_point(gm):
    I = ideal(gm, "x1-x0")
    assert translate_ideal(I, gm.point(2), LEFT, gm) == ideal(gm, "2*x1-x0")


def test_translation_by_identity(borel2):
    I = ideal(borel2, "x1*x4-4*x0^2")
    base = interesting_part(I + borel2.iG)
    assert translate_ideal(I, borel2.identity, LEFT, borel2) == base
    assert translate_ideal(I, borel2.identity, RIGHT, borel2) == base


def test_translation_composition_gm(gm):
    I = ideal(gm, "x1-x0")
    step = translate_ideal(translate_ideal(I, gm.point(2), LEFT, gm), gm.point(3), LEFT, gm)
    assert step == translate_ideal(I, gm.point(6), LEFT, gm) == ideal(gm, "6*x1-x0")


def test_op_D_single_letter(gm):
    f = parse_bipoly("(x1*y1-x0*y0)^2", 2)
    assert op_D((1,), f, gm) == parse_bipoly("2*(x1*y1-x0*y0)*x1*y0*y1", 2)


def test_op_D_twice_is_iterated(gm):
    f = parse_bipoly("(x1*y1-x0*y0)^2", 2)
    assert op_D((2,), f, gm) == op_D((1,), op_D((1,), f, gm), gm)


def test_op_Bk_chart_zero(gm):
    e = parse_poly("(x1-x0)^2", 2)
    assert op_Bk((1,), e, 0, gm) == parse_poly("2*(x1-x0)*x0*x1", 2)


def test_p_family_examples(gm, borel2):
    P = parse_poly("(x1-x0)^2", 2)
    assert p_family(P, (1,), gm) == parse_poly("2*x1*(x1-x0)", 2)
    assert p_family(P, (0,), gm) == P
    H = borel2.iG.gens[0]
    for exps in ((0, 0, 0), (1, 0, 0), (0, 1, 1)):
        for variant in ("E", "C", "D"):
            assert borel2.iG.contains(p_family(H, exps, borel2, variant, b="full"))


def test_jet_ideal_all_variants(gm):
    I = ideal(gm, "(x1-x0)^2")
    for v in JET_VARIANTS:
        assert jet_ideal(I, 1, v, gm) == ideal(gm, "x1-x0")
    assert jet_ideal(I, 0, "E", gm) == interesting_part(I + gm.iG)


def test_unknown_variant(gm):
    with pytest.raises(ValueError):
        jet_generators(ideal(gm, "x1"), 1, "Z", gm)


def test_partial_ideal_examples(gm):
    I = ideal(gm, "(x1-x0)^2")
    assert interesting_part(partial_ideal(I, gm.identity, 1, LEFT, gm)) == ideal(gm, "x1-x0")
    g = gm.point(3)
    for side in (LEFT, RIGHT):
        assert interesting_part(partial_ideal(I, g, 0, side, gm)) == translate_ideal(I, g, side, gm)


def test_right_partial_compose_borel2(borel2):
    b = borel2.subalgebra("nilpotent")
    I = ideal(borel2, "(x1-2*x0)^2", "x4-2*x0")
    g = borel2.parse_point([2, 1, 3])
    h = borel2.parse_point([1, -1, 2])
    assert borel2.ad_stable(g, b) and borel2.ad_stable(h, b)
    lhs = interesting_part(partial_ideal(partial_ideal(I, g, 1, RIGHT, borel2, b),
                                         h, 1, RIGHT, borel2, b))
    rhs = interesting_part(partial_ideal(I, borel2.point_mul(h, g), 2, RIGHT, borel2, b))
    assert lhs == rhs


def test_identity_suite_gm(gm):
    report = identity_suite(gm, "full", suite_instances(gm))
    assert report and all(r["passed"] for r in report)


def test_identity_suite_borel2_mixed_laws(borel2):
    report = identity_suite(borel2, "nilpotent", suite_instances(borel2))
    names = {r["identity"] for r in report}
    assert {"right-partial-compose", "left-right-partials-commute"} <= names
    assert all(r["passed"] for r in report)


def test_identity_suite_negative_control():
    # one sign flipped in a chart-change table
    tables = {(0, 0): [parse_poly("0", 2), parse_poly("-x0*x1", 2)],
              (0, 1): [parse_poly("-x0*x1", 2), parse_poly("0", 2)]}
    bad = GroupModel("gm-bad", 1, [(0, 0)], [[[1]]], q_tables=tables)
    inst = [{"I": ideal(bad, "(x1-x0)^2"), "g": bad.point(2), "h": bad.point(3),
             "T": 1, "T2": 1}]
    report = identity_suite(bad, None, inst)
    failed = {r["identity"] for r in report if not r["passed"]}
    assert "chart-change-tables" in failed
