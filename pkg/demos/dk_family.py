"""Walk through the D_k family f = x^2 y + y^(k-1) with a field of contact order m.

Prints the algebra dimensions behind the homological index next to the
residue-route value.  Run with ``python3 demos/dk_family.py``.
"""

from gsvindex.index import Invariants, full_report
from gsvindex.parser import format_polynomial, make_problem, parse_polynomial

XY = ("x", "y")


def dk(k, m):
    f = parse_polynomial(f"x^2*y + y^{k - 1}", XY)
    X = [parse_polynomial(f"{k - 2}/{2 * (k - 1)}*x^{m + 1}", XY), parse_polynomial(f"1/{k - 1}*x^{m}*y", XY)]
    return make_problem(XY, f, X)


header = f"{'k':>2} {'m':>2} | {'O/(X1,f)':>8} {'h0*':>4} {'t1':>3} {'t2':>3} {'A':>3} {'A/(c)':>5} | {'homol':>5} {'resid':>5}"
print(header)
print("-" * len(header))
for k, m in [(4, 2), (4, 3), (4, 4), (5, 2), (5, 3), (6, 2), (6, 3)]:
    spec = dk(k, m)
    inv = Invariants(spec)
    r = full_report(spec)
    print(
        f"{k:>2} {m:>2} | {inv.colength_X1_f:>8} {inv.h0_star:>4} {inv.term1:>3} {inv.term2:>3} "
        f"{inv.milnor:>3} {inv.milnor_mod_c:>5} | {r.gsv_homological:>5} {r.gsv_residue:>5}"
    )

# at m = 2 the B' term and dim A/(c) both drop to k-1; the shifts cancel
spec = dk(5, 2)
print()
print("c for D_5, m = 2:", format_polynomial(full_report(spec).c, XY))
