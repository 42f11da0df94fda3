"""Compare closed-form homology dimensions with the brute-force truncated complex.

The oracle builds the contraction complex on forms of degree < N directly
and takes ranks; it knows nothing about colon ideals or residues.
"""

from gsvindex.index import full_report
from gsvindex.oracle import homology_dims, homology_dims_star
from gsvindex.parser import make_problem, parse_polynomial


def problem(vars, f, X):
    return make_problem(vars, parse_polynomial(f, vars), [parse_polynomial(x, vars) for x in X])


CASES = {
    "D_4, m=3": problem(("x", "y"), "x^2*y + y^3", ["1/3*x^4", "1/3*x^3*y"]),
    "D_5, m=2": problem(("x", "y"), "x^2*y + y^4", ["3/8*x^3", "1/4*x^2*y"]),
    "A_3 Euler": problem(("x", "y"), "x^2 + y^4", ["4*x", "2*y"]),
    "A_1 rotation, n=3": problem(("x", "y", "z"), "x^2 + y^2 + z^2", ["-y", "x", "0"]),
}

for name, spec in CASES.items():
    report = full_report(spec)
    star, res = homology_dims_star(spec)
    h, chi, _ = homology_dims(spec)
    print(name)
    print(f"  formula h*: {report.dims.h_star}   oracle h*: {star}   (orders {res.orders_used})")
    print(f"  formula h:  {report.dims.h}   oracle h:  {h}")
    print(f"  index {report.index}, oracle Euler characteristic {chi}")
