"""Problem builders and independent ground truths shared by the tests."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from gsvindex.parser import make_problem, parse_polynomial
from gsvindex.polynomial import Polynomial

XY = ("x", "y")
XYZ = ("x", "y", "z")

DK_FAMILY = [(4, 2), (4, 3), (5, 2), (5, 3), (6, 2)]


def problem(vars, f, X):
    return make_problem(vars, parse_polynomial(f, vars), [parse_polynomial(x, vars) for x in X])


def dk(k, m):
    """``f = x^2 y + y^(k-1)`` with the field of contact order ``m``; ``c = x^m``."""
    return problem(
        XY,
        f"x^2*y + y^{k - 1}",
        [f"{k - 2}/{2 * (k - 1)}*x^{m + 1}", f"1/{k - 1}*x^{m}*y"],
    )


def euler_ak(k):
    """``A_k`` curve ``x^2 + y^(k+1)`` with its weighted Euler field."""
    return problem(XY, f"x^2 + y^{k + 1}", [f"{k + 1}*x", "2*y"])


def a1_radial():
    return problem(XY, "x^2 + y^2", ["x", "y"])


def staircase_colength(monomials, n):
    """Count monomials outside a monomial ideal by brute force.

    The ideal must contain a pure power of every variable; the box below
    those powers is enumerated directly.
    """
    bound = []
    for i in range(n):
        pure = [m[i] for m in monomials if all(m[j] == 0 for j in range(n) if j != i)]
        if not pure:
            raise ValueError("ideal has no pure power of variable %d" % i)
        bound.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bound)):
        if not any(all(e[i] >= m[i] for i in range(n)) for m in monomials):
            count += 1
    return count


coefficients = st.integers(-3, 3).map(Fraction)


@st.composite
def polynomials(draw, n=2, max_degree=4, max_terms=4, vanish=False):
    lo = 1 if vanish else 0
    monos = [e for e in itertools.product(range(max_degree + 1), repeat=n) if lo <= sum(e) <= max_degree]
    chosen = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Polynomial(n, {e: draw(coefficients) for e in chosen})


@st.composite
def sqh_sequences(draw, max_degree=5):
    """Regular pairs ``(x^a + ..., y^b + ...)`` of colength ``a*b``.

    Every extra term has weighted degree above 1 for weights ``(1/a, 1/b)``,
    so the weighted initial forms are ``x^a, y^b``.  An optional shear
    ``x -> x + t y`` hides the monomial shape.
    Returns ``(gens, a*b)``.
    """
    a = draw(st.integers(1, 4))
    b = draw(st.integers(1, 4))
    heavy = [
        (i, j)
        for i in range(max_degree + 1)
        for j in range(max_degree + 1)
        if 0 < i + j <= max_degree and i * b + j * a > a * b
    ]

    def extra():
        if not heavy:
            return {}
        chosen = draw(st.lists(st.sampled_from(heavy), max_size=3, unique=True))
        return {e: draw(coefficients) for e in chosen}

    g1 = Polynomial(2, {(a, 0): draw(st.integers(1, 3)), **extra()})
    g2 = Polynomial(2, {(0, b): draw(st.integers(1, 3)), **extra()})
    gens = [g1, g2]
    if draw(st.booleans()):
        gens = gens[::-1]
    t = draw(st.integers(-2, 2))
    if t:
        x, y = Polynomial.gens(2)
        gens = [g.substitute([x + y.scale(t), y]) for g in gens]
    return gens, a * b


@st.composite
def monomial_ideals(draw, n=2, max_power=5, extra=3):
    """Monomial generators containing a pure power of each variable."""
    pure = [tuple(draw(st.integers(1, max_power)) * int(j == i) for j in range(n)) for i in range(n)]
    others = draw(
        st.lists(st.tuples(*[st.integers(0, max_power) for _ in range(n)]), max_size=extra)
    )
    others = [m for m in others if sum(m) > 0]
    return pure + others
