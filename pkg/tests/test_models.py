import json

import pytest
from gmpy2 import mpq

from multest.models import (ModelError, StabilityError, ValidationError, DerivationWord,
                            load_model, model_validate, pad_charts, random_points)
from multest.poly import parse_bipoly, parse_poly


def test_gm_chart_is_padded_product(gm):
    (chart,) = gm.chartsL
    assert [str(p) for p in chart.polys] == [str(parse_bipoly("x0*y0", 2)),
                                             str(parse_bipoly("x1*y1", 2))]
    assert gm.c5 == 1


def test_pad_charts_raises_x_degree():
    raw = [("L", [parse_bipoly("y0", 2), parse_bipoly("x1*y1", 2)])]
    (chart,) = pad_charts(raw, [(parse_poly("x0", 2), None)])
    assert chart.polys[0] == parse_bipoly("x0*y0", 2)
    assert chart.bidegree == (1, 1)


def test_pad_charts_balanced_unchanged():
    raw = [("L", [parse_bipoly("x0*y0", 2), parse_bipoly("x1*y1", 2)])]
    (chart,) = pad_charts(raw, [(None, None)])
    assert list(chart.polys) == raw[0][1]


def test_gm_group_law(gm):
    g, h = gm.point(2), gm.point(3)
    assert gm.point_mul(g, h) == gm.point(6)
    assert gm.point_mul(g, gm.point_inv(g)) == gm.identity
    assert gm.chart_index(g) == 0


def test_borel2_group_law_noncommutative(borel2):
    g = borel2.parse_point([2, 1, 3])
    h = borel2.parse_point([1, -1, 2])
    assert borel2.point_mul(g, h) != borel2.point_mul(h, g)
    assert borel2.point_mul(borel2.point_inv(g), g) == borel2.identity
    assert borel2.identity.projective.coords == tuple(
        borel2.identity.projective.coords[0] * c for c in (1, 2, 1, 1, 2))


def test_identity_lies_on_closure(borel2, gl2):
    for model in (borel2, gl2):
        pt = model.identity.projective.coords
        assert all(not p.evaluate(pt) for p in model.iG.gens)


def test_sigma_generate_gm(gm):
    pts = gm.sigma_generate([gm.point(1), gm.point(2)], 2)
    assert sorted(gm.params(p)[0] for p in pts) == [1, 2, 4]
    assert gm.sigma_generate([gm.point(2), gm.point(1)], 0) == [gm.identity]


def test_sigma_generate_keeps_both_orders(borel2):
    g = borel2.parse_point([2, 1, 3])
    h = borel2.parse_point([1, -1, 2])
    pts = borel2.sigma_generate([borel2.identity, g, h], 2)
    assert borel2.point_mul(g, h) in pts and borel2.point_mul(h, g) in pts


def test_builtins_validate(gm, borel2, gl2):
    for model in (gm, borel2, gl2):
        report = model_validate(model, samples=5)
        assert all(report.values())


def test_corrupted_table_fails_check_b():
    data = {"name": "gm-bad", "matrix_size": 1, "free_entries": [[0, 0]],
            "lie_basis": [[[1]]],
            "q_tables": {"0,0": ["0", "2*x0*x1"], "0,1": ["-x0*x1", "0"]}}
    with pytest.raises(ValidationError) as err:
        load_model(data)
    assert err.value.check == "b"


def test_custom_model_from_json(tmp_path):
    data = {"name": "gm-copy", "matrix_size": 1, "free_entries": [[0, 0]],
            "lie_basis": [[[1]]],
            "subalgebras": {"full": {"basis": [[1]], "orbit": [["s0"]]}}}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data))
    model = load_model(str(path))
    assert model.nvars == 2 and model.point_mul(model.point(2), model.point(3)) == model.point(6)


def test_unknown_model_field():
    with pytest.raises(ModelError):
        load_model({"name": "x", "matrix_size": 1, "free_entries": [[0, 0]],
                    "lie_basis": [[[1]]], "colour": "red"})


def test_nilpotent_direction_is_ad_stable(borel2):
    b = borel2.subalgebra("nilpotent")
    for g in random_points(borel2, 5, seed=3):
        assert borel2.ad_stable(g, b)
    g = borel2.parse_point([2, 1, 3])
    # Ad scales the nilpotent direction by a/d
    assert borel2.adjoint_apply(g, DerivationWord((1,)), b) == {(1,): mpq(2, 3)}


def test_torus_direction_not_stable_under_unipotent(borel2):
    b = borel2.subalgebra("torus1")
    assert borel2.ad_stable(borel2.parse_point([2, 0, 3]), b)
    u = borel2.parse_point([1, 1, 1])
    assert not borel2.ad_stable(u, b)
    with pytest.raises(StabilityError):
        borel2.adjoint_apply(u, DerivationWord((1,)), b)


def test_translation_moves_points(gm, px):
    P = px("x1-x0", gm)
    # P(g*x) vanishes at g^-1
    Q = gm.translate_left(P, gm.point(2))
    assert not Q.evaluate(gm.point_inv(gm.point(2)).projective.coords)
