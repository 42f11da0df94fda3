"""Grothendieck residues by the monomial-cover recipe.

For a regular sequence ``g = (g_1, ..., g_n)`` pick exponents ``k_i`` with
``x_i^{k_i}`` in the ideal ``(g)`` and a matrix ``A`` with
``x_i^{k_i} = sum_j A_ij g_j``.  The residue of ``h`` with respect to ``g``
is then the coefficient of ``x_1^{k_1-1} ... x_n^{k_n-1}`` in ``h det(A)``.

The cover is first sought as an exact polynomial identity (a Macaulay-style
solve with growing degree bound).  When the local ring needs genuine power
series for ``A`` no polynomial identity exists; the cover then falls back to
a witness that holds modulo ``m^W`` with ``W`` beyond the degree the
coefficient extraction can see, which leaves the residue unchanged.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoStabilization, NotRegular
from .local import DEFAULT_CAP, Truncation, colength, span
from .polynomial import Polynomial, determinant, jacobian

EXACT_RETRIES = 3
EXACT_STEP = 4


@dataclass(frozen=True)
class ResidueCover:
    gens: tuple
    exponents: tuple
    A: tuple
    exact: bool
    # x^k - A g vanishes modulo m^order (exact covers: order is None)
    order: int | None = None
    # m^nakayama is contained in (g)
    nakayama: int | None = None

    def residual(self):
        n = len(self.gens)
        out = []
        for i in range(n):
            xk = Polynomial.monomial(tuple(self.exponents[i] * int(k == i) for k in range(n)))
            s = xk
            for j in range(n):
                s = s - self.A[i][j] * self.gens[j]
            out.append(s)
        return out

    def det(self):
        return _det_cached(self)

    def raised(self, i):
        """The cover with ``k_i`` raised by one (row ``i`` of ``A`` times ``x_i``)."""
        n = len(self.gens)
        shift = tuple(int(k == i) for k in range(n))
        A = [list(row) for row in self.A]
        A[i] = [a.mul_monomial(shift) for a in A[i]]
        ks = list(self.exponents)
        ks[i] += 1
        order = None if self.order is None else self.order + 1
        return ResidueCover(self.gens, tuple(ks), tuple(tuple(r) for r in A), self.exact, order, self.nakayama)


@functools.lru_cache(maxsize=512)
def _det_cached(cover):
    return determinant([list(row) for row in cover.A])


def _unit_vector_power(n, i, k):
    return Polynomial.monomial(tuple(k * int(j == i) for j in range(n)))


def _certify(gens, trunc):
    """Smallest order ``N`` at which ``m^d in (g)`` is certified; returns the span and ``d``."""
    first = trunc.first(max(g.degree() for g in gens))
    for N in range(first, trunc.cap + 1):
        S = span(gens, N)
        d = S.nakayama_degree()
        if d is not None and d < N - 1:
            return S, d
    verdict = colength(gens, trunc)
    if not verdict.finite:
        raise NotRegular("denominators do not form a regular sequence (infinite colength)")
    raise NoStabilization(f"could not certify finite colength by order {trunc.cap}", verdict.values)


@functools.lru_cache(maxsize=256)
def _cover(gens, start, cap, retries):
    trunc = Truncation(start, cap)
    n = len(gens)
    S, d = _certify(list(gens), trunc)
    # I contains m^d and S is taken at order > d, so membership there is exact.
    ks = []
    for i in range(n):
        k = next(k for k in range(1, d + 1) if S.contains(_unit_vector_power(n, i, k)))
        ks.append(k)
    targets = [_unit_vector_power(n, i, ks[i]) for i in range(n)]

    D = max(ks) + max(g.degree() for g in gens) + 1
    for _ in range(retries):
        E = span(list(gens), D, witnesses=True, exact=True)
        rows = [E.membership_witness(t) for t in targets]
        if all(r is not None for r in rows):
            cover = ResidueCover(gens, tuple(ks), tuple(tuple(r) for r in rows), True, None, d)
            if all(r.is_zero() for r in cover.residual()):
                return cover
        D += EXACT_STEP

    W = d + sum(k - 1 for k in ks) + 1
    T = span(list(gens), W, witnesses=True)
    rows = [T.membership_witness(t) for t in targets]
    rows = [[a.truncate(W) for a in r] for r in rows]
    cover = ResidueCover(gens, tuple(ks), tuple(tuple(r) for r in rows), False, W, d)
    for r in cover.residual():
        if r.order() is not None and r.order() < W:
            raise AssertionError("truncated cover identity failed")  # engine bug
    return cover


def monomial_cover(gens, trunc=Truncation(), exact_retries=EXACT_RETRIES):
    """Exponents ``k`` and matrix ``A`` with ``x_i^{k_i} = sum_j A_ij g_j``."""
    gens = tuple(gens)
    n = gens[0].nvars
    if len(gens) != n:
        raise NotRegular(f"need {n} denominators for {n} variables, got {len(gens)}")
    for g in gens:
        if g.is_zero():
            raise NotRegular("zero denominator")
        if g.constant_term():
            raise NotRegular("denominators must vanish at the origin")
    return _cover(gens, trunc.start, trunc.cap, exact_retries)


def coefficient_of_product(p, q, exp):
    """Coefficient of ``x^exp`` in ``p*q`` without forming the product."""
    exp = tuple(exp)
    total = Fraction(0)
    qt = q.terms
    for e, c in p.terms.items():
        rest = tuple(a - b for a, b in zip(exp, e))
        if min(rest) < 0:
            continue
        other = qt.get(rest)
        if other:
            total += c * other
    return total


def grothendieck_residue(h, gens, trunc=Truncation()):
    """``res [h / (g_1 ... g_n)]`` at the origin, as an exact rational."""
    cover = monomial_cover(gens, trunc)
    return residue_with_cover(h, cover)


def residue_with_cover(h, cover):
    target = tuple(k - 1 for k in cover.exponents)
    return coefficient_of_product(h, cover.det(), target)


def poincare_hopf_index(X, trunc=Truncation()):
    """Local multiplicity of the vector field ``X`` as ``res[det DX / X]``."""
    value = grothendieck_residue(determinant(jacobian(X)), X, trunc)
    if value.denominator != 1:
        raise AssertionError(f"non-integral Poincare-Hopf index {value}")
    return int(value)


__all__ = [
    "DEFAULT_CAP",
    "ResidueCover",
    "coefficient_of_product",
    "grothendieck_residue",
    "monomial_cover",
    "poincare_hopf_index",
    "residue_with_cover",
]
