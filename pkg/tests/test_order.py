import pytest

from multest.models import LEFT, RIGHT, DomainError
from multest.order import enumerate_words, ord_direct, ord_via_ideals
from multest.poly import parse_poly


def P(text, model):
    return parse_poly(text, model.nvars)


def test_linear_form_has_order_one(gm):
    res = ord_direct(gm.identity, "full", P("x1-x0", gm), gm)
    assert res.value == 1 and str(res.witness) == "D1"


def test_nonvanishing_has_order_zero(gm):
    assert ord_direct(gm.identity, "full", P("x0", gm), gm).value == 0


def test_cube_has_order_three(gm):
    assert ord_direct(gm.identity, "full", P("(x1-x0)^3", gm), gm, tmax=5).value == 3


def test_order_beyond_tmax_is_lower_bound(gm):
    res = ord_direct(gm.identity, "full", P("(x1-x0)^5", gm), gm, tmax=3)
    assert not res.finite and res.exceeds(3) and str(res) == ">= 4"


def test_order_at_translated_point(gm):
    assert ord_direct(gm.point(2), "full", P("(x1-2*x0)^2", gm), gm).value == 2
    assert ord_direct(gm.point(3), "full", P("(x1-2*x0)^2", gm), gm).value == 0


def test_closure_member_rejected(borel2):
    with pytest.raises(DomainError):
        ord_direct(borel2.identity, "nilpotent", P("x3-x0", borel2), borel2)


def test_ideal_side_predicates(gm):
    one = gm.identity
    Q = P("(x1-x0)^2", gm)
    for side in (LEFT, RIGHT):
        assert ord_via_ideals(one, one, "full", Q, 1, gm, side)
        assert not ord_via_ideals(one, one, "full", Q, 2, gm, side)


def test_predicates_match_direct_order_borel2(borel2):
    b = borel2.subalgebra("nilpotent")
    g = borel2.parse_point([1, 0, 1])
    h = borel2.parse_point([1, 1, 1])
    Q = P("(x1-x4)^2", borel2)
    o = ord_direct(borel2.point_mul(g, h), b, Q, borel2, tmax=4)
    for T in range(4):
        for side in (LEFT, RIGHT):
            assert ord_via_ideals(g, h, b, Q, T, borel2, side) == o.exceeds(T)


@pytest.mark.parametrize("d,T,count", [(1, 3, 4), (2, 2, 6), (3, 0, 1)])
def test_word_counts(d, T, count):
    words = enumerate_words(d, T)
    assert len(words) == count
    assert words[0].total == 0
