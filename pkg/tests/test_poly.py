import random

import pytest
import sympy
from gmpy2 import mpq

from multest.poly import (BiPolynomial, DegreeError, ParseError, Polynomial, ProjectivePoint,
                          parse_bipoly, parse_poly)


def p2(text):
    return parse_poly(text, 2)


def test_square_of_difference():
    assert p2("(x1-x0)*(x1-x0)") == p2("x1^2-2*x0*x1+x0^2")


def test_zero_is_additive_identity():
    P = p2("3*x0*x1-1/2*x1^2")
    assert P + Polynomial.zero(2) == P


def test_binomial_cube():
    assert p2("x1-x0") ** 3 == p2("x1^3-3*x0*x1^2+3*x0^2*x1-x0^3")


def test_rational_coefficients_are_exact():
    P = p2("1/3*x0 + 1/6*x0")
    assert P == p2("1/2*x0")
    assert P.terms[(1, 0)] == mpq(1, 2)


def test_distributivity_on_random_inputs():
    rng = random.Random(7)

    def rand():
        return Polynomial(3, {(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)):
                              mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)})
    for _ in range(20):
        a, b, c = rand(), rand(), rand()
        assert (a + b) * c == a * c + b * c


def test_substitute_into_chart():
    P = parse_bipoly("(y1-y0)^2", 2)
    x0, x1, y0, y1 = (BiPolynomial.variable(4, i) for i in range(4))
    assert P.substitute([x0, x1, x0 * y0, x1 * y1]) == parse_bipoly("(x1*y1-x0*y0)^2", 2)


def test_identity_substitution():
    P = p2("x1^2-x0*x1")
    assert P.substitute([Polynomial.variable(2, 0), Polynomial.variable(2, 1)]) == P


def test_linear_substitution():
    x0, x1 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert p2("x1-x0").substitute([x0, x1.scale(2)]) == p2("2*x1-x0")


def test_partial_derivatives():
    f = parse_bipoly("(x1*y1-x0*y0)^2", 2)
    assert f.diff(3) == parse_bipoly("2*x1*(x1*y1-x0*y0)", 2)
    assert Polynomial.constant(2, 5).diff(0).is_zero()
    assert p2("x0*x1^2").diff(1) == p2("2*x0*x1")


def test_dehomogenize_and_homogenize():
    assert p2("x0^2*x1").dehomogenize(0) == p2("x1")
    assert p2("x1").homogenize(0, 2) == p2("x0*x1")
    P = p2("x1^2-x0*x1")
    assert P.dehomogenize(1).homogenize(1, 2) == P


def test_homogenize_rejects_low_degree():
    with pytest.raises(DegreeError):
        p2("x1^3").homogenize(0, 2)


def test_evaluation():
    P = p2("x1-x0")
    assert P.evaluate(ProjectivePoint([1, 1]).normalized()) == 0
    assert P.evaluate(ProjectivePoint([1, 2]).normalized()) == 1
    f = parse_bipoly("x1*y1-x0*y0", 2)
    assert f.evaluate([1, 2, 1, 1]) == 1


def test_projective_point_normalization():
    z = ProjectivePoint([0, 3, 6])
    assert z.first_nonzero == 1
    assert z.normalized() == (0, 1, 2)
    assert z == ProjectivePoint([0, 1, 2])


def test_canonical_representation():
    a = p2("x0*x1 + x1^2")
    b = p2("x1^2 + x1*x0")
    assert a == b and hash(a) == hash(b) and a.canonical() == b.canonical()


def test_homogeneity_preserved():
    a, b = p2("x0^2-x1^2"), p2("x0*x1")
    assert (a + b).is_homogeneous(2) and (a * b).is_homogeneous(4)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("x0+", 2)
    with pytest.raises(ParseError):
        parse_poly("", 2)


def test_sympy_oracle_expansion():
    x0, x1, x2 = sympy.symbols("x0 x1 x2")
    rng = random.Random(3)
    for _ in range(10):
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        text = f"({a}*x0+{b}*x1-x2)^3*(x0-{c}*x2)"
        expected = sympy.Poly(sympy.sympify(text.replace("^", "**")), x0, x1, x2)
        got = parse_poly(text, 3)
        assert {m: mpq(int(v.p), int(v.q)) for m, v in expected.as_dict().items()} == got.terms
