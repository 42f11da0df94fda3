"""Ideals of the local ring at the origin, computed in truncations ``O/m^N``.

Every object in scope (Milnor algebras, annihilator quotients, colengths of
regular sequences) has finite length and is supported at the origin, so
its dimension is eventually visible in ``O/m^N``.  The engine works with
the image ``(I + m^N)/m^N`` of an ideal as a subspace of the finite space
spanned by monomials of degree ``< N`` and raises ``N`` until the number it
is asked for stops changing.

Two numbers govern the search (see :class:`Truncation`): the first order
tried and a hard cap.  Nothing is ever silently truncated: if the cap is hit
while values still move, :class:`~gsvindex.errors.NoStabilization` is
raised with every value seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegreeOverflow, NoStabilization, NotNested, RingMismatch
from .linalg import EchelonBasis, MonomialIndex, kernel, to_fraction, to_mpq
from .polynomial import Polynomial

INFINITE = math.inf
DEFAULT_CAP = 24


@dataclass(frozen=True)
class Truncation:
    """Search window for truncation orders.

    ``start`` is a floor: the first order actually used is never below
    ``max generator degree + 2``.
    """

    start: int | None = None
    cap: int = DEFAULT_CAP

    def first(self, degree):
        base = degree + 2
        return base if self.start is None else max(self.start, base)


@dataclass
class StabilizedDim:
    value: int | float
    orders_used: list = field(default_factory=list)
    stable: bool = True
    values: dict = field(default_factory=dict)

    @property
    def finite(self):
        return self.value != INFINITE

    def __int__(self):
        if not self.finite:
            raise ValueError("dimension is infinite")
        return int(self.value)


def stabilize(fn, first, cap, step=1, allow_infinite=False, what="dimension"):
    """Evaluate ``fn(N)`` for ``N = first, first+step, ...`` until two
    consecutive values agree.

    With ``allow_infinite`` a run that increases strictly at every order up
    to the cap is reported as ``INFINITE``.
    """
    values = {}
    prev = None
    # a start above the cap still gets one attempt, so the error can show it
    N = min(first, cap)
    while N <= cap:
        v = fn(N)
        values[N] = v
        if prev is not None and v == prev:
            return StabilizedDim(v, list(values), True, values)
        prev = v
        N += step
    seq = list(values.values())
    if allow_infinite and len(seq) >= 2 and all(b > a for a, b in zip(seq, seq[1:])):
        return StabilizedDim(INFINITE, list(values), False, values)
    raise NoStabilization(f"{what} did not stabilize by truncation order {cap}", values)


class TruncatedRing:
    """``O/m^N`` with the monomial basis of degree ``< N``."""

    def __init__(self, n, N):
        if N < 1:
            raise ValueError("truncation order must be at least 1")
        self.n = n
        self.N = N
        self.index = MonomialIndex(n)
        self.size = self.index.count(N)
        self.basis = self.index.basis(N)

    def __eq__(self, other):
        return isinstance(other, TruncatedRing) and (self.n, self.N) == (other.n, other.N)

    def __hash__(self):
        return hash((self.n, self.N))

    def __repr__(self):
        return f"TruncatedRing(n={self.n}, N={self.N})"

    def vector(self, p):
        """Coordinates of ``p mod m^N``."""
        col = self.index.col
        N = self.N
        return {col(e): to_mpq(c) for e, c in p.terms.items() if sum(e) < N}

    def polynomial(self, vec):
        mono = self.index.mono
        return Polynomial(self.n, {mono(c): to_fraction(x) for c, x in vec.items()})

    def shifted_vector(self, terms, shift, limit=None):
        """Coordinates of ``x^shift * p`` truncated at ``limit`` (default ``N``)."""
        limit = self.N if limit is None else limit
        col = self.index.col
        out = {}
        for e, c in terms:
            s = tuple(a + b for a, b in zip(e, shift))
            if sum(s) < limit:
                out[col(s)] = c
        return out


def _prepare(gens):
    out = []
    seen = set()
    for g in gens:
        if g.is_zero() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out


class IdealSpan:
    """The subspace ``(I + m^N)/m^N`` of an ideal ``I = (gens)``.

    With ``witnesses=True`` each basis row remembers how it was built from
    the generators.  With ``exact=True`` only products of degree ``< N``
    are used, so the span is the degree-``< N`` part of the polynomial
    ideal's Macaulay space and witnesses are exact polynomial identities.
    """

    def __init__(self, ring, gens, basis, witnesses=False, exact=False):
        self.ring = ring
        self.gens = tuple(gens)
        self.basis = basis
        self.witnesses = witnesses
        self.exact = exact

    @property
    def rank(self):
        return self.basis.rank

    @property
    def colength(self):
        return self.ring.size - self.basis.rank

    @property
    def rows(self):
        return [self.ring.polynomial(self.basis.rows[p]) for p in sorted(self.basis.rows)]

    def row_witness(self, pivot):
        """Generator coefficients of the row with the given pivot column."""
        if not self.witnesses:
            raise ValueError("span was built without witness tracking")
        return self._combo_to_polys(self.basis.combos[pivot])

    def _combo_to_polys(self, combo):
        n = self.ring.n
        parts = [dict() for _ in self.gens]
        for (j, shift), coef in combo.items():
            parts[j][shift] = to_fraction(coef)
        return [Polynomial(n, part) for part in parts]

    def _check_degree(self, p):
        if p.degree() >= self.ring.N:
            raise DegreeOverflow(f"degree {p.degree()} is not below truncation order {self.ring.N}")

    def reduce(self, p):
        """Normal form of ``p mod m^N`` against the span."""
        return self.ring.polynomial(self.basis.reduce(self.ring.vector(p))[0])

    def contains(self, p):
        return not self.basis.reduce(self.ring.vector(p))[0]

    def membership_witness(self, p):
        """Coefficients ``a`` with ``p = sum a_j g_j mod m^N``, or ``None``."""
        if not self.witnesses:
            raise ValueError("span was built without witness tracking")
        self._check_degree(p)
        rem, combo = self.basis.reduce(self.ring.vector(p), {})
        if rem:
            return None
        # reduce() accumulated -(sum of row combos); flip the sign
        return [-a for a in self._combo_to_polys(combo)]

    def nakayama_degree(self):
        """Smallest ``d < N`` with every degree-``d`` monomial a pivot, else ``None``.

        Then ``m^d`` lies in ``I + m^(d+1)``, hence in ``I`` by Nakayama's
        lemma, and the truncated colength is the true colength.
        """
        idx = self.ring.index
        pivots = self.basis.rows
        for d in range(self.ring.N):
            lo, hi = idx.count(d), idx.count(d + 1)
            if all(c in pivots for c in range(lo, hi)):
                return d
        return None

    def is_closed(self):
        """Every row times every variable stays in the span (mod ``m^N``)."""
        ring = self.ring
        for row in self.rows:
            for i in range(ring.n):
                shift = tuple(int(k == i) for k in range(ring.n))
                vec = ring.shifted_vector([(e, to_mpq(c)) for e, c in row.terms.items()], shift)
                if not self.basis.contains(vec):
                    return False
        return True

    def truncate(self, N):
        """Image of this span in ``O/m^N`` for ``N`` not above the current order."""
        if N > self.ring.N:
            raise RingMismatch("cannot raise the truncation order of a computed span")
        ring = TruncatedRing(self.ring.n, N)
        return IdealSpan(ring, self.gens, self.basis.restrict(ring.size))


def span(gens, N, witnesses=False, exact=False):
    """Image of the ideal generated by ``gens`` in ``O/m^N``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to know the number of variables")
    ring = TruncatedRing(gens[0].nvars, N)
    gens = _prepare(gens)
    return _span_in(ring, gens, witnesses, exact)


def span_in(ring, gens, witnesses=False, exact=False):
    return _span_in(ring, _prepare(gens), witnesses, exact)


def _span_in(ring, gens, witnesses=False, exact=False):
    N = ring.N
    basis = EchelonBasis(track=witnesses)
    prepared = []
    for j, g in enumerate(gens):
        low = g.degree() if exact else g.order()
        prepared.append((j, [(e, to_mpq(c)) for e, c in g.terms.items()], low))
    monos = ring.basis
    idx = ring.index
    for d in range(N):
        for j, terms, low in prepared:
            if d + low >= N:
                continue
            for shift in monos[idx.count(d): idx.count(d + 1)]:
                vec = ring.shifted_vector(terms, shift)
                basis.insert(vec, (j, shift))
    return IdealSpan(ring, gens, basis, witnesses, exact)


def colength_at(gens, N):
    gens = _prepare(gens)
    return span(gens, N).colength


def _max_degree(polys):
    return max((p.degree() for p in polys), default=0)


def colength(gens, trunc=Truncation()):
    """``dim O/(gens)``, possibly ``INFINITE``."""
    gens = _prepare(gens)
    if not gens:
        return StabilizedDim(INFINITE, [], False, {})
    if any(g.constant_term() for g in gens):
        return StabilizedDim(0, [], True, {})
    first = trunc.first(_max_degree(gens))

    def at(N):
        return span(gens, N).colength

    return stabilize(at, first, trunc.cap, allow_infinite=True, what="colength")


def regular_sequence_check(gens, trunc=Truncation()):
    """True iff ``n`` germs in ``n`` variables have finite colength."""
    gens = list(gens)
    n = gens[0].nvars
    if len(gens) != n:
        raise ValueError(f"need exactly {n} germs, got {len(gens)}")
    if any(g.constant_term() for g in gens):
        raise ValueError("germs must vanish at the origin")
    return colength(gens, trunc).finite


def work_order(N, degree):
    """Truncation order at which colons and intersections are solved.

    Solutions are computed modulo ``m^W`` and then projected to ``m^N``;
    the gap absorbs the high-degree junk a truncated linear solve admits.
    """
    return 2 * N + degree


def colon_space(gens_I, p, W):
    """``{g mod m^W : g p in I + m^W}`` as an echelon basis over ``O/m^W``."""
    ring = TruncatedRing(p.nvars, W)
    S = span_in(ring, gens_I).basis if _prepare(gens_I) else EchelonBasis()
    terms = [(e, to_mpq(c)) for e, c in p.terms.items()]
    images = [ring.shifted_vector(terms, mu) for mu in ring.basis]
    out = EchelonBasis()
    for combo in kernel(images, modulo=S):
        out.insert({i: a for i, a in combo.items()})
    return ring, out


def colon_at(gens_I, p, N, work=None):
    """Generators of ``(I : p)`` modulo ``m^N``.

    The linear solve runs at order ``W = work`` (default :func:`work_order`)
    and only the degree ``< N`` part of the solution space is kept.
    """
    if p.is_zero():
        raise ValueError("colon by the zero polynomial")
    n = p.nvars
    W = work if work is not None else work_order(N, max(_max_degree(gens_I), p.degree()))
    W = max(W, N)
    ring_W = TruncatedRing(n, W)
    ring_N = TruncatedRing(n, N)
    # T = I + p * m^N  (mod m^W): g in V_N lies in the projected colon iff
    # g p is in T.
    gens = _prepare(gens_I)
    T = span_in(ring_W, gens).basis if gens else EchelonBasis()
    terms = [(e, to_mpq(c)) for e, c in p.terms.items()]
    idx = ring_W.index
    ordp = p.order()
    for d in range(N, W - ordp):
        for mu in ring_W.basis[idx.count(d): idx.count(d + 1)]:
            T.insert(ring_W.shifted_vector(terms, mu))
    images = [ring_W.shifted_vector(terms, mu) for mu in ring_N.basis]
    sol = EchelonBasis()
    for combo in kernel(images, modulo=T):
        sol.insert(combo)
    return minimal_generators(ring_N, sol)


def minimal_generators(ring, basis):
    """A small generating set of the ideal whose image in ``O/m^N`` is ``basis``.

    ``basis`` must already be closed under multiplication by variables.
    """
    gens = []
    J = EchelonBasis()
    for pivot in sorted(basis.rows):
        vec = basis.rows[pivot]
        if J.contains(vec):
            continue
        poly = ring.polynomial(vec)
        gens.append(poly)
        terms = [(e, to_mpq(c)) for e, c in poly.terms.items()]
        low = poly.order()
        for mu in ring.basis:
            if sum(mu) + low >= ring.N:
                break
            J.insert(ring.shifted_vector(terms, mu))
    return gens


def colon(gens_I, p, N=None, trunc=Truncation()):
    """Generators of ``(I : p)`` at truncation order ``N``.

    Without ``N`` the first order of ``trunc`` for these inputs is used.
    """
    if N is None:
        N = trunc.first(max(_max_degree(gens_I), p.degree()))
    return colon_at(gens_I, p, N)


def intersect(I, J):
    """``I cap J`` for two spans over the same truncated ring."""
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    vecs = [I.basis.rows[p] for p in sorted(I.basis.rows)]
    out = EchelonBasis()
    for combo in kernel(vecs, modulo=J.basis):
        v = {}
        for i, a in combo.items():
            for c, x in vecs[i].items():
                s = v.get(c, 0) + a * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
        out.insert(v)
    gens = minimal_generators(I.ring, out)
    return IdealSpan(I.ring, gens, out)


def quotient_dim_at(J1_gens, J2_gens, N):
    """``dim (J1 + m^N)/(J2 + m^N)``; raises :class:`NotNested` unless J2 is in J1."""
    J1 = _prepare(J1_gens)
    J2 = _prepare(J2_gens)
    n = (J1 or J2)[0].nvars
    ring = TruncatedRing(n, N)
    S1 = span_in(ring, J1) if J1 else IdealSpan(ring, (), EchelonBasis())
    for g in J2:
        if not S1.contains(g):
            raise NotNested(f"generator of the smaller ideal not in the larger one at N={N}")
    r2 = span_in(ring, J2).rank if J2 else 0
    return S1.rank - r2


def quotient_module_dim(J1_gens, J2_gens, trunc=Truncation()):
    """``dim J1/J2`` for nested ideals with finite-length quotient."""
    first = trunc.first(_max_degree(list(J1_gens) + list(J2_gens)))
    return stabilize(lambda N: quotient_dim_at(J1_gens, J2_gens, N), first, trunc.cap,
                     what="quotient dimension")
