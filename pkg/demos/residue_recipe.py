"""Residues by monomial covers, and the index as a single residue."""

from gsvindex import grothendieck_residue, poincare_hopf_index
from gsvindex.index import compute_c, gsv_index_residue
from gsvindex.parser import format_polynomial, make_problem, parse_polynomial

XY = ("x", "y")


def P(text):
    return parse_polynomial(text, XY)


# coefficient extraction for monomial denominators
print("res[(x+y)^2 / (x^2, y^2)] =", grothendieck_residue(P("(x + y)^2"), [P("x^2"), P("y^2")]))

# a non-monomial denominator is first covered: x^k = A g
g = [P("x^3 + y^4"), P("y^2 + x*y")]
print("res[x*y / g] =", grothendieck_residue(P("x*y"), g))
print("Poincare-Hopf index of g =", poincare_hopf_index(g))

# the index of a tangent field is one residue once c is known
spec = make_problem(XY, P("x^2*y + y^3"), [P("1/3*x^4"), P("1/3*x^3*y")])
print("c =", format_polynomial(compute_c(spec.f, spec.X), XY))
print("index by residue:", gsv_index_residue(spec))
