"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``column -> gmpy2.mpq`` with no stored zeros.  An
:class:`EchelonBasis` keeps rows keyed by their pivot, the smallest column
in the row, with the pivot entry normalised to one.  Columns are monomial
indices in degree-ascending order, so pivots sit on the lowest-degree
term of each row (a local ordering).

Optional combination tracking records, for every stored row, how it was
obtained from the inserted vectors; this yields ideal-membership witnesses
and kernel bases.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import comb

from gmpy2 import mpq

ZERO = mpq(0)


def to_mpq(value):
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def _axpy(target, a, source):
    """``target -= a * source`` in place; returns columns that became nonzero."""
    fresh = []
    for c, r in source.items():
        old = target.get(c)
        if old is None:
            target[c] = -a * r
            fresh.append(c)
        else:
            new = old - a * r
            if new:
                target[c] = new
            else:
                del target[c]
    return fresh


class EchelonBasis:
    """Incrementally built semi-reduced row echelon basis of a subspace."""

    def __init__(self, track=False):
        self.rows = {}
        self.track = track
        self.combos = {} if track else None

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return self.rows.keys()

    def copy(self):
        new = EchelonBasis(self.track)
        new.rows = dict(self.rows)
        if self.track:
            new.combos = dict(self.combos)
        return new

    def reduce(self, vec, combo=None):
        """Remainder of ``vec`` modulo the span; ``combo`` is updated alongside.

        Neither argument is modified; returns ``(remainder, combo)``.
        """
        v = dict(vec)
        combo = dict(combo) if combo is not None else None
        rows = self.rows
        if not rows:
            return v, combo
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            a = v.get(col)
            if a is None:
                continue
            row = rows[col]
            fresh = _axpy(v, a, row)
            for c in fresh:
                if c in rows:
                    heapq.heappush(heap, c)
            if combo is not None:
                _axpy(combo, a, self.combos[col])
        return v, combo

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def insert(self, vec, label=None):
        """Reduce and insert ``vec``.

        Returns ``None`` if ``vec`` was independent, otherwise the dependency
        found (a combo with ``vec``'s label, only meaningful when tracking).
        """
        combo = {label: mpq(1)} if self.track else None
        v, combo = self.reduce(vec, combo)
        if not v:
            return combo if self.track else {}
        pivot = min(v)
        inv = 1 / v[pivot]
        if inv != 1:
            v = {c: x * inv for c, x in v.items()}
            if combo is not None:
                combo = {k: x * inv for k, x in combo.items()}
        self.rows[pivot] = v
        if self.track:
            self.combos[pivot] = combo
        return None

    def restrict(self, limit):
        """Echelon basis of the image under dropping every column ``>= limit``."""
        out = EchelonBasis()
        for pivot in sorted(self.rows):
            if pivot >= limit:
                break
            out.insert({c: x for c, x in self.rows[pivot].items() if c < limit})
        return out

    def fully_reduced(self):
        """Rows in reduced row echelon form (each pivot column clear elsewhere)."""
        pivots = sorted(self.rows)
        rows = {p: dict(self.rows[p]) for p in pivots}
        for p in reversed(pivots):
            for q in pivots:
                if q >= p:
                    break
                a = rows[q].get(p)
                if a:
                    _axpy(rows[q], a, rows[p])
        return rows


def kernel(vectors, modulo=None):
    """Basis of ``{a : sum_i a_i vectors[i] in span(modulo)}`` as dicts ``i -> coef``."""
    eb = EchelonBasis(track=True)
    out = []
    for i, vec in enumerate(vectors):
        if modulo is not None:
            vec = modulo.reduce(vec)[0]
        dep = eb.insert(vec, label=i)
        if dep is not None:
            out.append(dep)
    return out


class MonomialIndex:
    """Bijection between exponent tuples and column numbers.

    Monomials are ordered by total degree, then lexicographically with the
    first variable largest (``1, x, y, x^2, x*y, y^2, ...`` for two
    variables).  The index of a monomial does not depend on any truncation
    order, so projection modulo ``m^N`` is simply a column cut-off.
    """

    _cache = {}

    def __new__(cls, n):
        inst = cls._cache.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst.n = n
            inst.monomials = []
            inst.index = {}
            inst.degree_reached = 0
            cls._cache[n] = inst
        return inst

    def count(self, N):
        """Number of monomials of total degree ``< N``."""
        return comb(N - 1 + self.n, self.n) if N > 0 else 0

    def _extend(self, N):
        for d in range(self.degree_reached, N):
            for exp in sorted(_compositions(d, self.n), reverse=True):
                self.index[exp] = len(self.monomials)
                self.monomials.append(exp)
        self.degree_reached = max(self.degree_reached, N)

    def basis(self, N):
        if N > self.degree_reached:
            self._extend(N)
        return self.monomials[: self.count(N)]

    def col(self, exp):
        c = self.index.get(exp)
        if c is None:
            self._extend(sum(exp) + 1)
            c = self.index[exp]
        return c

    def mono(self, col):
        while col >= len(self.monomials):
            self._extend(self.degree_reached + 1)
        return self.monomials[col]


def _compositions(d, n):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest
