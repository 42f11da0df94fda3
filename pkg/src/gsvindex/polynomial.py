"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients.  Variables are positional; names
only matter when parsing or printing (see :mod:`gsvindex.parser`).

Besides ring arithmetic the module provides the differential calculus needed
for vector fields (partial derivatives, ``X(p)``, Jacobians), the principal
minor sums of a polynomial matrix and linear changes of coordinates.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from numbers import Rational

from .errors import ArityMismatch, SingularMatrix


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    # gmpy2.mpq and friends
    try:
        return Fraction(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise TypeError(f"not an exact rational: {value!r}") from None


def grlex_key(exp):
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        clean = {}
        if terms:
            for exp, coef in terms.items():
                exp = tuple(exp)
                if len(exp) != self.nvars:
                    raise ArityMismatch(
                        f"exponent {exp} has length {len(exp)}, expected {self.nvars}"
                    )
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                coef = _as_fraction(coef)
                if coef:
                    clean[exp] = clean.get(exp, 0) + coef
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # terms already canonical: nonzero Fractions keyed by exponent tuples
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, value):
        value = _as_fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars, index):
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp, coef=1):
        exp = tuple(exp)
        return cls(len(exp), {exp: coef})

    @classmethod
    def gens(cls, nvars):
        return [cls.variable(nvars, i) for i in range(nvars)]

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a term; ``None`` for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=None)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def sorted_terms(self, descending=True):
        """Terms in graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def homogeneous_part(self, d):
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, N):
        """Drop every term of total degree ``>= N``."""
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) < N})

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        try:
            return Polynomial.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                r = _as_fraction(other)
            except TypeError:
                return NotImplemented
            return self.scale(r)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, r):
        r = _as_fraction(r)
        if not r:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * r for e, c in self.terms.items()})

    def __truediv__(self, other):
        # only division by nonzero scalars
        r = _as_fraction(other)
        if not r:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / r)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp, coef=1):
        coef = _as_fraction(coef)
        return Polynomial._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c * coef for e, c in self.terms.items()} if coef else {},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.terms == Polynomial.constant(self.nvars, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parser import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    # -- calculus -----------------------------------------------------------

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def substitute(self, values):
        """Compose: replace variable ``i`` by the polynomial ``values[i]``."""
        if len(values) != self.nvars:
            raise ArityMismatch("substitution needs one value per variable")
        m = values[0].nvars if values else 0
        powers = [[Polynomial.one(m)] for _ in values]
        result = Polynomial.zero(m)
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * values[i])
                if k:
                    term = term * powers[i][k]
            result = result + term
        return result

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total


# -- module-level operations ----------------------------------------------


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def scale(r, p):
    return p.scale(r)


def partial_derivative(p, i):
    """Formal partial derivative with respect to variable ``i`` (0-based)."""
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    return p.derivative(i)


def apply_vector_field(X, p):
    """``X(p) = sum_i X_i * dp/dz_i``."""
    if len(X) != p.nvars:
        raise ArityMismatch(f"vector field has {len(X)} components, polynomial {p.nvars} variables")
    out = Polynomial.zero(p.nvars)
    for i, Xi in enumerate(X):
        d = p.derivative(i)
        if d:
            out = out + Xi * d
    return out


def jacobian(X):
    """Matrix ``[[dX_i/dz_j]]`` as a list of rows."""
    return [[Xi.derivative(j) for j in range(Xi.nvars)] for Xi in X]


def exact_quotient(p, q):
    """Return ``p / q`` if ``q`` divides ``p`` in the polynomial ring, else ``None``.

    Division by a single polynomial with lex leading terms: the remainder is
    zero exactly when ``q`` divides ``p``.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = max(q.terms.items(), key=lambda t: t[0])
    quot = {}
    rem = p
    while rem:
        e, c = max(rem.terms.items(), key=lambda t: t[0])
        shift = tuple(a - b for a, b in zip(e, lead_e))
        if any(s < 0 for s in shift):
            return None
        coef = c / lead_c
        quot[shift] = coef
        rem = rem - q.mul_monomial(shift, coef)
    return Polynomial(p.nvars, quot)


def determinant(M):
    """Determinant of a square polynomial matrix.

    Cofactor expansion up to 3x3, fraction-free Bareiss elimination above.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    nv = M[0][0].nvars
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        total = Polynomial.zero(nv)
        for j in range(3):
            minor = [[M[r][c] for c in range(3) if c != j] for r in (1, 2)]
            term = M[0][j] * determinant(minor)
            total = total + term if j % 2 == 0 else total - term
        return total
    A = [list(row) for row in M]
    sign = 1
    prev = Polynomial.one(nv)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(nv)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = exact_quotient(num, prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def sigma(M, k):
    """Sum of all ``k x k`` principal minors of ``M`` (``sigma_0 = 1``)."""
    n = len(M)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    nv = M[0][0].nvars
    if k == 0:
        return Polynomial.one(nv)
    total = Polynomial.zero(nv)
    for idx in itertools.combinations(range(n), k):
        total = total + determinant([[M[r][c] for c in idx] for r in idx])
    return total


def chat_numerator(X, c):
    """``sum_{k=0}^{n-1} (-1)^k c^k sigma_{n-k-1}(DX)``.

    This is the residue numerator of the GSV index with the ``(2 pi i)``
    normalisation dropped.
    """
    n = len(X)
    DX = jacobian(X)
    total = Polynomial.zero(c.nvars)
    c_pow = Polynomial.one(c.nvars)
    for k in range(n):
        term = c_pow * sigma(DX, n - k - 1)
        total = total + term if k % 2 == 0 else total - term
        c_pow = c_pow * c
    return total


# -- linear coordinate changes --------------------------------------------


def invert_matrix(M):
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible over the rationals")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def linear_substitute(p, M):
    """``p(M z)`` for a rational matrix ``M``."""
    n = p.nvars
    z = Polynomial.gens(n)
    images = []
    for i in range(n):
        img = Polynomial.zero(n)
        for j in range(n):
            if M[i][j]:
                img = img + z[j].scale(M[i][j])
        images.append(img)
    return p.substitute(images)


def apply_linear_change(spec, M):
    """Pull the problem back along ``z -> M z``.

    ``f' = f o M`` and ``X' = M^{-1} (X o M)``, which keeps the tangency
    identity ``X'(f') = (c o M) f'``.
    """
    n = len(spec.vars)
    if len(M) != n or any(len(row) != n for row in M):
        raise ArityMismatch(f"expected a {n}x{n} matrix")
    Minv = invert_matrix(M)
    f2 = linear_substitute(spec.f, M)
    pulled = [linear_substitute(Xi, M) for Xi in spec.X]
    X2 = []
    for i in range(n):
        comp = Polynomial.zero(n)
        for j in range(n):
            if Minv[i][j]:
                comp = comp + pulled[j].scale(Minv[i][j])
        X2.append(comp)
    c2 = linear_substitute(spec.c_hint, M) if spec.c_hint is not None else None
    return dataclasses.replace(spec, f=f2, X=tuple(X2), c_hint=c2)
