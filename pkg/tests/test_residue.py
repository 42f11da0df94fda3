from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import XY, polynomials, sqh_sequences
from gsvindex.errors import NotRegular
from gsvindex.local import colength
from gsvindex.parser import parse_polynomial
from gsvindex.polynomial import Polynomial, determinant, jacobian
from gsvindex.residue import grothendieck_residue, monomial_cover, poincare_hopf_index, residue_with_cover


def P(text):
    return parse_polynomial(text, XY)


def test_cover_of_coordinates():
    cover = monomial_cover([P("x"), P("y")])
    assert cover.exponents == (1, 1)
    assert cover.A == ((Polynomial.one(2), Polynomial.zero(2)), (Polynomial.zero(2), Polynomial.one(2)))


def test_cover_of_monomial_ideal():
    cover = monomial_cover([P("x^2"), P("y^3")])
    assert cover.exponents == (2, 3)
    assert cover.det() == Polynomial.one(2)


def test_d4_cover_is_exact():
    cover = monomial_cover([P("1/3*x^4"), P("x^2*y + y^3")])
    assert cover.exact
    assert all(r.is_zero() for r in cover.residual())


def test_series_only_cover_falls_back_to_truncated_witness():
    # the relation for y involves the unit 1 + x^2 y^2 ... only as a series
    cover = monomial_cover([P("x + x^2"), P("y + x*y^3")])
    assert all(r.is_zero() or r.order() >= cover.order for r in cover.residual())
    assert grothendieck_residue(Polynomial.one(2), cover.gens) == 1


def test_residue_examples():
    assert grothendieck_residue(Polynomial.one(2), [P("x"), P("y")]) == 1
    assert grothendieck_residue(P("(x + y)^2"), [P("x^2"), P("y^2")]) == 2


def test_d4_index_residue_value():
    h = P("x^2 + 3*y^2") * P("2/3*x^3")
    assert grothendieck_residue(h, [P("1/3*x^4"), P("x^2*y + y^3")]) == 6


def test_poincare_hopf_examples():
    assert poincare_hopf_index([P("x"), P("y")]) == 1
    assert poincare_hopf_index([P("x^2"), P("y^3")]) == 6
    with pytest.raises(NotRegular):
        poincare_hopf_index([P("1/3*x^4"), P("1/3*x^3*y")])


def test_not_regular_inputs():
    with pytest.raises(NotRegular):
        grothendieck_residue(Polynomial.one(2), [P("x"), P("0")])
    with pytest.raises(NotRegular):
        grothendieck_residue(Polynomial.one(2), [P("x + 1"), P("y")])
    with pytest.raises(NotRegular):
        grothendieck_residue(Polynomial.one(2), [P("x")])


def test_three_variables():
    names = ("x", "y", "z")
    g = [parse_polynomial(t, names) for t in ("x^2", "y + x*z", "z^3")]
    assert grothendieck_residue(parse_polynomial("x*z^2", names), g) == 1
    assert poincare_hopf_index(g) == 6


# -- property suite: fuzzed regular sequences with n = 2, degrees <= 5 -------------------

FUZZ = settings(max_examples=120, deadline=None)
numerators = polynomials(max_degree=5, max_terms=5)
scalars = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@FUZZ
@given(sqh_sequences(), polynomials(max_degree=3, max_terms=3), st.integers(0, 1))
def test_annihilation_on_ideal(data, q, j):
    gens, _ = data
    assert grothendieck_residue(q * gens[j], gens) == 0


@FUZZ
@given(sqh_sequences(), numerators, numerators, scalars, scalars)
def test_linearity(data, h1, h2, a, b):
    gens, _ = data
    lhs = grothendieck_residue(h1.scale(a) + h2.scale(b), gens)
    assert lhs == a * grothendieck_residue(h1, gens) + b * grothendieck_residue(h2, gens)


@FUZZ
@given(sqh_sequences(), numerators, st.integers(0, 1), st.integers(1, 2))
def test_cover_exponent_independence(data, h, i, times):
    gens, _ = data
    cover = monomial_cover(gens)
    raised = cover
    for _ in range(times):
        raised = raised.raised(i)
    assert residue_with_cover(h, cover) == residue_with_cover(h, raised)


@FUZZ
@given(st.integers(1, 5), st.integers(1, 5), numerators)
def test_monomial_denominator_extraction(a, b, h):
    gens = [Polynomial.monomial((a, 0)), Polynomial.monomial((0, b))]
    assert grothendieck_residue(h, gens) == h.coefficient((a - 1, b - 1))


@FUZZ
@given(sqh_sequences())
def test_poincare_hopf_equals_colength(data):
    gens, ab = data
    assert poincare_hopf_index(gens) == colength(gens).value == ab


@settings(max_examples=60, deadline=None)
@given(sqh_sequences(), numerators)
def test_residue_is_rational_and_deterministic(data, h):
    gens, _ = data
    r = grothendieck_residue(h, gens)
    assert isinstance(r, Fraction)
    assert r == grothendieck_residue(h, list(gens))
    det = determinant(jacobian(gens))
    assert grothendieck_residue(det, gens) == colength(gens).value
