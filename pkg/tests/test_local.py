import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import XY, dk, monomial_ideals, polynomials, problem, sqh_sequences, staircase_colength
from gsvindex.errors import DegreeOverflow, NoStabilization, NotNested, RingMismatch
from gsvindex.index import normalize_coordinates
from gsvindex.linalg import MonomialIndex
from gsvindex.local import (
    INFINITE,
    Truncation,
    TruncatedRing,
    colength,
    colon,
    colon_at,
    intersect,
    quotient_dim_at,
    quotient_module_dim,
    regular_sequence_check,
    span,
    stabilize,
)
from gsvindex.parser import parse_polynomial
from gsvindex.polynomial import Polynomial


def P(text):
    return parse_polynomial(text, XY)


def monomials(exps, n=2):
    return [Polynomial.monomial(e) for e in exps]


# -- rings and spans -------------------------------------------------------------


def test_ring_basis_size_and_order():
    R = TruncatedRing(3, 4)
    assert R.size == 20
    degrees = [sum(e) for e in R.basis]
    assert degrees == sorted(degrees)
    assert R.basis[:4] == [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_monomial_index_is_order_independent():
    idx = MonomialIndex(2)
    assert idx.basis(3) == idx.basis(6)[: idx.count(3)]


def test_maximal_ideal_span():
    S = span([P("x"), P("y")], 3)
    assert S.colength == 1
    assert S.rank == 5


def test_d4_jacobian_colength():
    assert span([P("2*x*y"), P("x^2 + 3*y^2")], 6).colength == 4


def test_zero_generator_span():
    assert span([Polynomial.zero(2)], 5).rank == 0


def test_witness_examples():
    S = span([P("x^2"), P("y")], 4, witnesses=True)
    assert S.membership_witness(P("x^2")) == [Polynomial.one(2), Polynomial.zero(2)]
    J = span([P("2*x*y"), P("x^2 + 3*y^2")], 6, witnesses=True)
    w = J.membership_witness(P("x^4"))
    assert w is not None
    assert ((w[0] * P("2*x*y") + w[1] * P("x^2 + 3*y^2")) - P("x^4")).truncate(6).is_zero()
    assert span([P("x"), P("y")], 3, witnesses=True).membership_witness(Polynomial.one(2)) is None


def test_witness_degree_overflow():
    S = span([P("x")], 3, witnesses=True)
    with pytest.raises(DegreeOverflow):
        S.membership_witness(P("x^3"))


# -- colength ----------------------------------------------------------------------


def test_colength_examples():
    assert colength([P("x"), P("y")]).value == 1
    assert colength([P("1/3*x^4"), P("x^2*y + y^3")]).value == 12
    assert colength([P("1/3*x^4")]).value == INFINITE


def test_colength_unit_ideal():
    assert colength([P("1 + x"), P("y")]).value == 0


def test_regular_sequence_examples():
    assert regular_sequence_check([P("x"), P("y")])
    assert regular_sequence_check([P("1/3*x^4"), P("x^2*y + y^3")])
    assert not regular_sequence_check([P("1/3*x^4"), P("1/3*x^3*y")])


def test_no_stabilization_is_reported():
    with pytest.raises(NoStabilization) as info:
        colength([P("1/3*x^4"), P("x^2*y + y^3")], Truncation(2, 3))
    assert info.value.values


def test_stabilize_needs_two_equal_values():
    calls = []

    def fn(N):
        calls.append(N)
        return min(N, 7)

    res = stabilize(fn, 3, 20)
    assert res.value == 7 and res.stable
    assert calls == [3, 4, 5, 6, 7, 8]


# -- colon, intersection, quotients ------------------------------------------------


def test_colon_examples():
    gens = colon([P("x^4")], P("x^3*y"), N=8)
    assert span(gens, 8).rank == span([P("x")], 8).rank
    assert all(span([P("x")], 8).contains(g) for g in gens)
    gens = colon([P("x"), P("y")], Polynomial.one(2), N=5)
    assert span(gens, 5).colength == 1


def test_colon_by_quasihomogeneous_f_is_whole_ring():
    jac = [P("2*x*y"), P("x^2 + 3*y^2")]
    f = P("x^2*y + y^3")
    assert span(jac, 8).contains(f)
    gens = colon(jac, f, N=6)
    assert span(gens, 6).colength == 0


def test_intersection_examples():
    N = 4
    I = span([P("x^2"), P("x*y"), P("y^3")], N)
    assert intersect(I, I).rank == I.rank
    whole = span([Polynomial.one(2)], N)
    assert intersect(I, whole).rank == I.rank
    xy = intersect(span([P("x")], N), span([P("y")], N))
    assert xy.rank == span([P("x*y")], N).rank
    assert span([P("x*y")], N).basis.rows.keys() == xy.basis.rows.keys()


def test_intersection_ring_mismatch():
    with pytest.raises(RingMismatch):
        intersect(span([P("x")], 4), span([P("x")], 5))


def test_quotient_examples():
    assert quotient_module_dim([P("x"), P("y")], [P("x"), P("y")]).value == 0
    assert quotient_module_dim([P("x"), P("y")], [P("x^2"), P("x*y"), P("y^2"), P("x")]).value == 1


def test_quotient_not_nested():
    with pytest.raises(NotNested):
        quotient_dim_at([P("x")], [P("y")], 5)


def test_a_prime_x_quotient_at_k4():
    # J1 = (x) + (x^4), J2 = (x) cap ((x^4) + (f, df/dy)) + (x^4) for k = 4
    def at(N):
        inner = span([P("x^4"), P("x^2*y + y^3"), P("x^2 + 3*y^2")], N)
        cap = intersect(span([P("x")], N), inner)
        return quotient_dim_at([P("x"), P("x^4")], list(cap.gens) + [P("x^4")], N)

    assert stabilize(at, 6, 20).value == 4


def test_normalize_leaves_regular_specs():
    spec = dk(4, 3)
    assert normalize_coordinates(spec) is spec
    spec = problem(XY, "x^2 + y^2", ["x", "y"])
    assert normalize_coordinates(spec) is spec


def test_normalize_mixes_zero_first_component():
    # zero of X on the line V is isolated, but X_1 = 0 in these coordinates
    spec = problem(XY, "x", ["0", "y"])
    new = normalize_coordinates(spec, seed=1)
    assert not new.X[0].is_zero()
    assert regular_sequence_check([new.X[0], new.f])


# -- fuzzed properties -----------------------------------------------------------------

ideals = st.lists(polynomials(max_degree=4, max_terms=3, vanish=True), min_size=1, max_size=3)


@settings(max_examples=120, deadline=None)
@given(ideals, st.integers(3, 7))
def test_variable_closure(gens, N):
    assert span(gens, N).is_closed()


@settings(max_examples=120, deadline=None)
@given(ideals, st.lists(polynomials(max_degree=3, max_terms=3), min_size=3, max_size=3), st.integers(3, 7))
def test_witness_identity(gens, qs, N):
    p = Polynomial.zero(2)
    for q, g in zip(qs, gens):
        p = p + q * g
    p = p.truncate(N)
    S = span(gens, N, witnesses=True)
    w = S.membership_witness(p)
    assert w is not None
    total = Polynomial.zero(2)
    for a, g in zip(w, S.gens):
        total = total + a * g
    assert (total - p).truncate(N).is_zero()
    for pivot in S.basis.rows:
        row = S.ring.polynomial(S.basis.rows[pivot])
        combo = Polynomial.zero(2)
        for a, g in zip(S.row_witness(pivot), S.gens):
            combo = combo + a * g
        assert (combo - row).truncate(N).is_zero()


@settings(max_examples=120, deadline=None)
@given(sqh_sequences(max_degree=4), polynomials(max_degree=3, max_terms=3, vanish=True), st.integers(4, 7))
def test_colon_correctness(data, p, N):
    gens, _ = data
    if p.is_zero():
        return
    I = span(gens, N)
    for q in colon_at(gens, p, N):
        assert I.contains((q * p).truncate(N))
    C = span(colon_at(gens, p, N), N)
    assert all(C.contains(g.truncate(N)) for g in gens)


@settings(max_examples=120, deadline=None)
@given(monomial_ideals(max_power=4), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_monomial_colon_against_exponent_arithmetic(mons, e):
    # (x^m : x^e) is generated by x^max(m - e, 0)
    expected = [tuple(max(a - b, 0) for a, b in zip(m, e)) for m in mons]
    p = Polynomial.monomial(e)
    got = colon([Polynomial.monomial(m) for m in mons], p, N=12)
    assert span(got, 12).colength == staircase_colength(expected, 2)


@settings(max_examples=120, deadline=None)
@given(sqh_sequences(max_degree=4), polynomials(max_degree=3, max_terms=2, vanish=True))
def test_colength_monotone(data, extra):
    gens, ab = data
    base = colength(gens).value
    assert base == ab
    assert colength(gens + [extra]).value <= base


@settings(max_examples=120, deadline=None)
@given(monomial_ideals(n=2, max_power=6, extra=4))
def test_staircase_two_vars(mons):
    assert colength(monomials(mons)).value == staircase_colength(mons, 2)


@settings(max_examples=40, deadline=None)
@given(monomial_ideals(n=3, max_power=3, extra=3))
def test_staircase_three_vars(mons):
    assert colength([Polynomial.monomial(m) for m in mons]).value == staircase_colength(mons, 3)


@settings(max_examples=60, deadline=None)
@given(sqh_sequences(max_degree=4), polynomials(max_degree=2, max_terms=2, vanish=True), st.integers(5, 8))
def test_quotient_rank_identity(data, extra, N):
    gens, _ = data
    J1 = gens + [extra] if not extra.is_zero() else gens
    J2 = [g * h for g in gens for h in (P("x"), P("y"))]
    assert quotient_dim_at(J1, J2, N) + span(J2, N).rank == span(J1, N).rank


def test_staircase_helper_itself():
    assert staircase_colength([(2, 0), (0, 3)], 2) == 6
    assert staircase_colength([(2, 0), (0, 3), (1, 1)], 2) == 4
