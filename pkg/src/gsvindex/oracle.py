"""Brute-force homology of the contraction complexes on Kahler forms of V.

Forms ``mu dz_J`` with ``deg mu < N`` span a truncation of ``Omega^i``; the
subspace ``R^i = f Omega^i + df ^ Omega^{i-1}`` is computed alongside, and
contraction with ``X`` is a sparse matrix.  Homology of the quotient
complex ``Omega^*/R^*`` is read off from ranks only:

    dim H_i = dim(cycles) - dim(boundaries + R^i)

where cycles are forms whose contraction lands in ``R^{i-1}``.  Cycles are
solved at a larger order ``W`` and projected down to ``N``; a cycle
condition tested only modulo ``m^N`` would admit spurious top-degree
solutions.

Nothing here uses the closed formulas of :mod:`gsvindex.index`.
"""

from __future__ import annotations

import itertools

from .errors import OracleRefused
from .linalg import EchelonBasis, MonomialIndex, to_mpq
from .local import Truncation, stabilize, work_order

MAX_N = 3
MAX_ORDER = 16


def subsets(n, i):
    return list(itertools.combinations(range(n), i))


class FormSpace:
    """Truncated ``Omega^i`` in ``n`` variables, monomials of degree ``< N``.

    Column of ``mu dz_J`` is ``col(mu) * C(n, i) + position of J``, so a
    truncation to lower order is again a column cut-off.
    """

    def __init__(self, n, i, N):
        self.n, self.i, self.N = n, i, N
        self.subsets = subsets(n, i)
        self.pos = {J: k for k, J in enumerate(self.subsets)}
        self.width = len(self.subsets)
        self.index = MonomialIndex(n)
        self.monomials = self.index.basis(N)

    @property
    def dim(self):
        return len(self.monomials) * self.width

    def limit(self, N):
        return self.index.count(N) * self.width

    def col(self, mono, J):
        return self.index.col(mono) * self.width + self.pos[J]

    def basis(self):
        for mono in self.monomials:
            for J in self.subsets:
                yield mono, J

    def vector(self, parts):
        """``parts``: iterable of ``(J, terms)`` with terms ``[(exp, mpq)]``; truncates at ``N``."""
        out = {}
        N = self.N
        for J, terms in parts:
            for e, c in terms:
                if sum(e) >= N:
                    continue
                col = self.col(e, J)
                s = out.get(col, 0) + c
                if s:
                    out[col] = s
                else:
                    out.pop(col, None)
        return out


def _terms(p):
    return [(e, to_mpq(c)) for e, c in p.terms.items()]


def _shift(terms, mu, scale=1):
    return [(tuple(a + b for a, b in zip(e, mu)), c * scale) for e, c in terms]


def _wedge_sign(j, K):
    """``dz_j ^ dz_K = sign * dz_(K + j)``; zero sign if ``j in K``."""
    if j in K:
        return 0, None
    before = sum(1 for k in K if k < j)
    return (-1) ** before, tuple(sorted(K + (j,)))


def contraction_parts(X_terms, mu, J):
    """``iota_X(mu dz_J) = sum_p (-1)^p mu X_{J[p]} dz_(J minus J[p])``."""
    parts = []
    for p, j in enumerate(J):
        rest = J[:p] + J[p + 1:]
        parts.append((rest, _shift(X_terms[j], mu, (-1) ** p)))
    return parts


def contraction_matrix(X, i, N):
    """Images of the basis of truncated ``Omega^i`` under contraction with ``X``.

    Returns ``(source, target, columns)`` where ``columns[k]`` is the image
    of the ``k``-th source basis element (source enumeration order).
    """
    n = len(X)
    if not 1 <= i <= n:
        raise ValueError(f"form degree {i} outside 1..{n}")
    src = FormSpace(n, i, N)
    dst = FormSpace(n, i - 1, N)
    Xt = [_terms(x) for x in X]
    cols = [dst.vector(contraction_parts(Xt, mu, J)) for mu, J in src.basis()]
    return src, dst, cols


def relation_space(f, i, N):
    """Echelon basis of ``R^i = f Omega^i + df ^ Omega^{i-1}`` truncated at ``N``."""
    n = f.nvars
    space = FormSpace(n, i, N)
    ft = _terms(f)
    dft = [_terms(f.derivative(j)) for j in range(n)]
    eb = EchelonBasis()
    low = f.order()
    for mu in space.monomials:
        if sum(mu) + low >= N:
            continue
        for J in space.subsets:
            eb.insert(space.vector([(J, _shift(ft, mu))]))
    if i >= 1:
        for mu in space.monomials:
            for K in subsets(n, i - 1):
                parts = []
                for j in range(n):
                    sign, JK = _wedge_sign(j, K)
                    if sign:
                        parts.append((JK, _shift(dft[j], mu, sign)))
                vec = space.vector(parts)
                if vec:
                    eb.insert(vec)
    return space, eb


class _Complex:
    """All pieces of the truncated complex at one level ``N`` (work order ``W``)."""

    def __init__(self, spec, N, W, signs=None):
        self.spec, self.N, self.W = spec, N, W
        self.n = spec.n
        self.X = list(spec.X)
        base = [_terms(x) for x in self.X]
        # signs[i] rescales the contraction leaving degree i; any choice of
        # signs leaves every rank, hence every homology dimension, unchanged
        signs = signs or [1] * (self.n + 1)
        self.Xt = {i: [[(e, c * signs[i]) for e, c in t] for t in base] for i in range(1, self.n + 1)}
        self._rel = {}

    def relations(self, i, order):
        key = (i, order)
        if key not in self._rel:
            self._rel[key] = relation_space(self.spec.f, i, order)
        return self._rel[key]

    def projected_cycles(self, i):
        """``dim`` of the cycle space of ``Omega^i/R^i`` projected to order ``N``."""
        N, W = self.N, self.W
        src = FormSpace(self.n, i, N)
        if i == 0:
            return src.dim
        dst, R = self.relations(i - 1, W)
        eb = R.copy()
        base = eb.rank
        wide = FormSpace(self.n, i, W)
        high, low = [], []
        for mu, J in wide.basis():
            (low if sum(mu) < N else high).append((mu, J))
        for mu, J in high:
            eb.insert(dst.vector(contraction_parts(self.Xt[i], mu, J)))
        rank_high = eb.rank - base
        for mu, J in low:
            eb.insert(dst.vector(contraction_parts(self.Xt[i], mu, J)))
        rank_all = eb.rank - base
        # dim pi_N(Z) = dim Z - dim(Z cap m^N) = |low| - (rank_all - rank_high)
        return len(low) - (rank_all - rank_high)

    def boundaries(self, i, with_image=True):
        """``dim (iota_X Omega^{i+1} + R^i)`` truncated at ``N``."""
        N = self.N
        space, R = self.relations(i, N)
        eb = R.copy()
        if with_image and i < self.n:
            src = FormSpace(self.n, i + 1, N)
            for mu, J in src.basis():
                vec = space.vector(contraction_parts(self.Xt[i + 1], mu, J))
                if vec:
                    eb.insert(vec)
        return eb.rank

    def star_dims(self):
        return [self.projected_cycles(i) - self.boundaries(i) for i in range(self.n + 1)]

    def plain_dims(self):
        n = self.n
        dims = [self.projected_cycles(i) - self.boundaries(i) for i in range(n - 1)]
        dims.append(self.projected_cycles(n - 1) - self.boundaries(n - 1, with_image=False))
        return dims


def _guard(spec, N, max_n, max_order):
    if spec.n > max_n:
        raise OracleRefused(f"oracle limited to n <= {max_n} (got n = {spec.n})")
    if N is not None and N > max_order:
        raise OracleRefused(f"oracle limited to truncation order <= {max_order} (got {N})")


def _degree(spec):
    return max([spec.f.degree()] + [x.degree() for x in spec.X])


def homology_dims_star_at(spec, N, W=None, max_n=MAX_N, max_order=MAX_ORDER, signs=None):
    """``(h_0*, ..., h_n*)`` of the complex truncated at order ``N``."""
    _guard(spec, N, max_n, max_order)
    W = W if W is not None else work_order(N, _degree(spec))
    return _Complex(spec, N, W, signs).star_dims()


def homology_dims_at(spec, N, W=None, max_n=MAX_N, max_order=MAX_ORDER, signs=None):
    """``(h_0, ..., h_{n-1})`` of the complex ending at ``Omega^{n-1}``."""
    _guard(spec, N, max_n, max_order)
    W = W if W is not None else work_order(N, _degree(spec))
    return _Complex(spec, N, W, signs).plain_dims()


def _oracle_trunc(spec, trunc, max_order):
    first = trunc.first(_degree(spec))
    return first, min(trunc.cap, max_order)


def homology_dims_star(spec, trunc=Truncation(), max_n=MAX_N, max_order=MAX_ORDER):
    """Stabilised star homology; agreement is required at ``N`` and ``N + 2``."""
    _guard(spec, None, max_n, max_order)
    first, cap = _oracle_trunc(spec, trunc, max_order)
    res = stabilize(lambda N: tuple(homology_dims_star_at(spec, N, max_n=max_n, max_order=max_order)),
                    first, cap, step=2, what="oracle star homology")
    return list(res.value), res


def homology_dims(spec, trunc=Truncation(), max_n=MAX_N, max_order=MAX_ORDER):
    """Stabilised ``(h_0, ..., h_{n-1})`` and the Euler characteristic."""
    _guard(spec, None, max_n, max_order)
    first, cap = _oracle_trunc(spec, trunc, max_order)
    res = stabilize(lambda N: tuple(homology_dims_at(spec, N, max_n=max_n, max_order=max_order)),
                    first, cap, step=2, what="oracle homology")
    dims = list(res.value)
    chi = sum((-1) ** i * d for i, d in enumerate(dims))
    return dims, chi, res


def descends(spec, i, N):
    """Check that contraction maps ``R^i`` into ``R^{i-1}`` at order ``N``."""
    n = spec.n
    f = spec.f
    Xt = [_terms(x) for x in spec.X]
    dst, Rlow = relation_space(f, i - 1, N)
    space = FormSpace(n, i, N)
    ft = _terms(f)
    dft = [_terms(f.derivative(j)) for j in range(n)]
    gens = []
    for mu in space.monomials:
        for J in space.subsets:
            gens.append([(J, _shift(ft, mu))])
        for K in subsets(n, i - 1):
            parts = []
            for j in range(n):
                sign, JK = _wedge_sign(j, K)
                if sign:
                    parts.append((JK, _shift(dft[j], mu, sign)))
            gens.append(parts)
    for parts in gens:
        img = []
        for J, terms in parts:
            for e, c in terms:
                for rest, t in contraction_parts(Xt, e, J):
                    img.append((rest, [(ee, cc * c) for ee, cc in t]))
        if not Rlow.contains(dst.vector(img)):
            return False
    return True


def ambient_quotient_dims(spec, N):
    """``dim Omega^i / R^i`` truncated at ``N``, for ``i = 0..n``."""
    return [FormSpace(spec.n, i, N).dim - relation_space(spec.f, i, N)[1].rank for i in range(spec.n + 1)]


__all__ = [
    "FormSpace",
    "ambient_quotient_dims",
    "contraction_matrix",
    "descends",
    "homology_dims",
    "homology_dims_at",
    "homology_dims_star",
    "homology_dims_star_at",
    "relation_space",
]
