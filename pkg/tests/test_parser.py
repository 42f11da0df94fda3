from fractions import Fraction

import pytest
from hypothesis import given, settings

from cases import XY, polynomials
from gsvindex.errors import ArityMismatch, NotAGerm, PolySyntaxError, TangencyMismatch, UnknownVariable
from gsvindex.parser import format_polynomial, format_problem, parse_polynomial, parse_problem
from gsvindex.polynomial import Polynomial


def test_d4_polynomial():
    f = parse_polynomial("x^2*y + y^3", XY)
    assert f.terms == {(2, 1): 1, (0, 3): 1}


def test_zero():
    assert parse_polynomial("0", XY).is_zero()


def test_rational_coefficient():
    p = parse_polynomial("1/3*x^4", XY)
    assert p.terms == {(4, 0): Fraction(1, 3)}


def test_canonical_merging():
    p = parse_polynomial("x*y - y*x + 2*(x + 1) - 2", XY)
    assert p == parse_polynomial("2*x", XY)


def test_implicit_multiplication_rejected():
    with pytest.raises(PolySyntaxError):
        parse_polynomial("2x", XY)
    with pytest.raises(PolySyntaxError):
        parse_polynomial("x y", XY)


@pytest.mark.parametrize("text", ["(x + y", "x + y)", "x +", "x^", "x^y", "x/y", "x/0", "*x"])
def test_malformed(text):
    with pytest.raises(PolySyntaxError) as info:
        parse_polynomial(text, XY)
    assert info.value.column is not None


def test_unknown_variable_position():
    with pytest.raises(UnknownVariable) as info:
        parse_polynomial("x + zz", XY)
    assert info.value.column == 5


def test_problem_d4():
    spec = parse_problem("vars: x y\nf: x^2*y + y^3\nX: 1/3*x^4, 1/3*x^3*y\nc: x^3\n")
    assert spec.n == 2
    assert spec.c_hint == parse_polynomial("x^3", XY)


def test_problem_comments_and_commas():
    spec = parse_problem("# radial field\nvars: x, y\nf: x^2+y^2\nX: x, y\n")
    assert spec.X == (parse_polynomial("x", XY), parse_polynomial("y", XY))


def test_problem_declared_c_radial():
    spec = parse_problem("vars: x y\nf: x^2+y^2\nX: x, y\nc: 2\n")
    assert spec.c_hint == Polynomial.constant(2, 2)


def test_not_a_germ():
    with pytest.raises(NotAGerm):
        parse_problem("vars: x y\nf: x^2+y^2+1\nX: x, y\n")
    with pytest.raises(NotAGerm):
        parse_problem("vars: x y\nf: x^2+y^2\nX: x + 1, y\n")


def test_arity():
    with pytest.raises(ArityMismatch):
        parse_problem("vars: x y\nf: x^2+y^2\nX: x\n")


def test_tangency_mismatch():
    with pytest.raises(TangencyMismatch):
        parse_problem("vars: x y\nf: x^2+y^2\nX: x, y\nc: 3\n")


def test_error_carries_line_and_column():
    with pytest.raises(PolySyntaxError) as info:
        parse_problem("vars: x y\nf: x^2 + * y\nX: x, y\n")
    assert info.value.line == 2
    assert info.value.column == 10


def test_error_line_in_field_components():
    with pytest.raises(PolySyntaxError) as info:
        parse_problem("vars: x y\nf: x^2\nX: x, (y\n")
    assert info.value.line == 3


def test_format_examples():
    assert format_polynomial(Polynomial.zero(2)) == "0"
    assert format_polynomial(parse_polynomial("y + x", XY)) == "x + y"
    assert format_polynomial(parse_polynomial("y^3 + x^2*y", XY)) == "x^2*y + y^3"
    assert format_polynomial(parse_polynomial("-x + 1/3*x^4", XY)) == "1/3*x^4 - x"


def test_format_problem_round_trip():
    text = "vars: x y\nf: x^2*y + y^3\nX: 1/3*x^4, 1/3*x^3*y\nc: x^3\n"
    assert format_problem(parse_problem(text)) == text


@settings(max_examples=150, deadline=None)
@given(polynomials(n=2, max_degree=6, max_terms=6))
def test_round_trip(p):
    assert parse_polynomial(format_polynomial(p, XY), XY) == p


@settings(max_examples=50, deadline=None)
@given(polynomials(n=3, max_degree=4, max_terms=5))
def test_round_trip_three_vars(p):
    names = ("x", "y", "z")
    assert parse_polynomial(format_polynomial(p, names), names) == p
