"""The GSV index of a vector field tangent to an isolated hypersurface singularity.

Three independent routes are provided:

* homological: the dimensions ``h_0*``, ``h_1*`` and ``lambda`` of the
  contraction complex on Kahler forms of ``V`` from colengths and annihilator
  quotients, and the index as their alternating sum;
* residue: a single Grothendieck residue over ``(X_1, ..., X_{n-1}, f)``;
* Gomez-Mont: the special formula valid when ``X`` itself has an isolated
  zero in the ambient space, cross-checked against the residue form
  ``ind_C^n(X) - res[det(DX - c) / X]``.

:func:`full_report` runs all of them on normalised coordinates and reports
whether they agree.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    GSVError,
    InternalInconsistency,
    NonPolynomialFactor,
    NormalizationFailed,
    NotIsolated,
    NotTangent,
    SingularMatrix,
)
from .local import (
    Truncation,
    colength,
    colon_at,
    quotient_dim_at,
    regular_sequence_check,
    stabilize,
)
from .parser import format_polynomial
from .polynomial import (
    Polynomial,
    apply_linear_change,
    apply_vector_field,
    chat_numerator,
    determinant,
    exact_quotient,
    invert_matrix,
    jacobian,
)
from .residue import grothendieck_residue, poincare_hopf_index

NORMALIZE_RETRIES = 20
SERIES_ORDER = 24


# -- tangency factor -------------------------------------------------------


def compute_c(f, X, order=SERIES_ORDER):
    """The function ``c`` with ``X(f) = c f``.

    Polynomial quotients are returned directly.  If ``c`` exists only as a
    power series, :class:`NonPolynomialFactor` carries it truncated below
    ``order``.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    g = apply_vector_field(X, f)
    if g.is_zero():
        return Polynomial.zero(f.nvars)
    q = exact_quotient(g, f)
    if q is not None:
        return q
    # power series division, one homogeneous degree at a time
    d = f.order()
    lowest = f.homogeneous_part(d)
    c = Polynomial.zero(f.nvars)
    for j in range(order):
        r = g - c * f
        if r.is_zero():
            return c
        if r.order() < d + j:
            raise NotTangent("X(f) is not a multiple of f")
        piece = exact_quotient(r.homogeneous_part(d + j), lowest)
        if piece is None:
            raise NotTangent("X(f) is not a multiple of f")
        c = c + piece
    raise NonPolynomialFactor(
        "X(f)/f is a power series, not a polynomial", c=c.truncate(order), order=order
    )


def tangency_factor(f, X, order=SERIES_ORDER):
    """``(c, is_polynomial)``; series factors come back truncated."""
    try:
        return compute_c(f, X, order), True
    except NonPolynomialFactor as exc:
        return exc.c, False


# -- coordinates -------------------------------------------------------------


def _random_matrix(rng, n):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        try:
            invert_matrix(M)
        except SingularMatrix:
            continue
        return M


def normalizing_change(spec, seed=0, trunc=Truncation()):
    """Return ``(spec', M)`` with ``(X_1, ..., X_{n-1}, f)`` regular in ``spec'``.

    ``M`` is ``None`` when the given coordinates already work.
    """
    def ok(s):
        if any(Xi.is_zero() for Xi in s.X[:-1]):
            return False
        return regular_sequence_check(list(s.X[:-1]) + [s.f], trunc)

    if ok(spec):
        return spec, None
    rng = random.Random(seed)
    M = None
    for _ in range(NORMALIZE_RETRIES):
        M = _random_matrix(rng, spec.n)
        candidate = apply_linear_change(spec, M)
        if ok(candidate):
            return candidate, M
    raise NormalizationFailed(
        f"no regular (X_1..X_(n-1), f) after {NORMALIZE_RETRIES} coordinate changes", last_matrix=M
    )


def normalize_coordinates(spec, seed=0, trunc=Truncation()):
    return normalizing_change(spec, seed, trunc)[0]


# -- the algebraic invariants ----------------------------------------------


class Invariants:
    """Lazily computed dimensions for one problem in fixed coordinates.

    ``c`` defaults to the tangency factor of ``spec``.  Every dimension is
    stabilised over truncation orders; the orders used are kept in
    :attr:`orders`.
    """

    def __init__(self, spec, trunc=Truncation(), c=None):
        self.spec = spec
        self.trunc = trunc
        if c is None:
            c, self.c_is_polynomial = tangency_factor(spec.f, spec.X)
        else:
            self.c_is_polynomial = True
        self.c = c
        self.n = spec.n
        self.f = spec.f
        self.X = list(spec.X)
        self.jac = [spec.f.derivative(i) for i in range(self.n)]
        self.orders = {}
        degs = [spec.f.degree()] + [Xi.degree() for Xi in spec.X]
        if self.c_is_polynomial:
            degs.append(c.degree())
        self.degree = max(degs)

    def _first(self):
        return self.trunc.first(self.degree)

    def _colength(self, name, gens):
        res = colength(gens, self.trunc)
        self.orders[name] = res.orders_used
        return res.value

    def _stable(self, name, fn):
        res = stabilize(fn, self._first(), self.trunc.cap, what=name)
        self.orders[name] = res.orders_used
        return res.value

    def _colon(self, gens, p, N):
        if p.is_zero():
            return [Polynomial.one(self.n)]
        return colon_at(gens, p, N, work=2 * N + self.degree)

    @functools.cached_property
    def milnor(self):
        mu = self._colength("milnor", self.jac)
        if mu == float("inf"):
            raise NotIsolated("f does not have an isolated singularity")
        return mu

    @functools.cached_property
    def milnor_mod_f(self):
        return self._colength("A/(f)", self.jac + [self.f])

    @functools.cached_property
    def milnor_mod_c(self):
        return self._colength("A/(c)", self.jac + [self.c])

    @functools.cached_property
    def colength_X1_f(self):
        """``dim O/(X_1, ..., X_{n-1}, f)``."""
        return self._colength("O/(X',f)", self.X[:-1] + [self.f])

    @functools.cached_property
    def h0_star(self):
        value = self._colength("h0*", self.X + [self.f])
        if value == float("inf"):
            raise NotIsolated("X does not have an isolated zero on V")
        return value

    @functools.cached_property
    def term1(self):
        """``dim ann_B(f)/(c)`` as ``(I_n : f) / (I_n + (c))``."""
        I = self.X
        J2 = I + [self.c]

        def at(N):
            return quotient_dim_at(self._colon(I, self.f, N), J2, N)

        return self._stable("ann_B(f)/(c)", at)

    @functools.cached_property
    def term2(self):
        """``dim ann_B'(X_n) / (ann_B'(X_n) cap B'(f, df/dz_n))``.

        Computed as ``((I' : X_n) + K) / K`` with ``I' = (X_1..X_{n-1})``
        and ``K = I' + (f, df/dz_n)``, which is isomorphic.
        """
        Ip = self.X[:-1]
        K = Ip + [self.f, self.jac[-1]]

        def at(N):
            C = self._colon(Ip, self.X[-1], N)
            return quotient_dim_at(C + K, K, N)

        return self._stable("B' quotient", at)

    @functools.cached_property
    def h1_star(self):
        return self.term1 + self.term2

    @functools.cached_property
    def lambda_pair(self):
        """``(dim ann_A(f)/(c), dim ann_A(c)/(f))``."""
        jac = self.jac

        def first(N):
            return quotient_dim_at(self._colon(jac, self.f, N), jac + [self.c], N)

        def second(N):
            return quotient_dim_at(self._colon(jac, self.c, N), jac + [self.f], N)

        return self._stable("ann_A(f)/(c)", first), self._stable("ann_A(c)/(f)", second)

    @functools.cached_property
    def lam(self):
        a, b = self.lambda_pair
        if a != b:
            raise InternalInconsistency(f"ann_A(f)/(c) = {a} but ann_A(c)/(f) = {b}")
        return a

    def homology(self):
        n = self.n
        lam = self.lam
        h_star = [self.h0_star, self.h1_star] + [lam] * (n - 1)
        h = list(h_star[: n - 1])
        h.append(h_star[n - 1] + self.milnor_mod_f - h_star[n])
        return HomologyDims(
            h_star=h_star,
            h=h,
            lam=lam,
            milnor=self.milnor,
            milnor_mod_f=self.milnor_mod_f,
            milnor_mod_c=self.milnor_mod_c,
            terms={"ann_B(f)/(c)": self.term1, "B' quotient": self.term2},
            route={
                "h_star[0]": "dim O/(X_1..X_n, f)",
                "h_star[1]": "dim ann_B(f)/(c) + dim ann_B'(X_n)/(ann_B'(X_n) cap B'(f, df/dz_n))",
                "h_star[2:]": "lambda = dim ann_A(f)/(c) = dim ann_A(c)/(f)",
                "h[n-1]": "h*_(n-1) + dim A/(f) - h*_n",
            },
        )

    def index_from_dims(self):
        """Index from ``h_0*``, ``h_1*`` and Milnor-algebra colengths."""
        base = self.h0_star - self.term1 - self.term2
        if self.n % 2 == 0:
            return base + self.milnor_mod_c - self.milnor
        return base + self.milnor_mod_f


@dataclass
class HomologyDims:
    h_star: list
    h: list
    lam: int
    milnor: int
    milnor_mod_f: int
    milnor_mod_c: int
    terms: dict = field(default_factory=dict)
    route: dict = field(default_factory=dict)

    @property
    def euler(self):
        return sum((-1) ** i * v for i, v in enumerate(self.h))


# -- public route functions ---------------------------------------------------


def h0_star(spec, trunc=Truncation()):
    return Invariants(spec, trunc).h0_star


def h1_star(spec, trunc=Truncation()):
    return Invariants(spec, trunc).h1_star


def lambda_(spec, trunc=Truncation()):
    return Invariants(spec, trunc).lam


def gsv_index_homological(spec, trunc=Truncation()):
    return Invariants(spec, trunc).index_from_dims()


def gsv_index_residue(spec, trunc=Truncation(), c=None):
    """Residue of ``df/dz_n * chat(X, c)`` over ``(X_1, ..., X_{n-1}, f)``."""
    if c is None:
        c, _ = tangency_factor(spec.f, spec.X)
    n = spec.n
    numerator = spec.f.derivative(n - 1) * chat_numerator(list(spec.X), c)
    value = grothendieck_residue(numerator, tuple(spec.X[:-1]) + (spec.f,), trunc)
    return _integer(value, "residue index")


def _integer(value, what):
    value = Fraction(value)
    if value.denominator != 1:
        raise InternalInconsistency(f"{what} is not an integer: {value}")
    return int(value)


def gomez_mont_formula(inv):
    if inv.n % 2 == 0:
        return inv.h0_star - inv.milnor_mod_f
    return inv.h0_star - inv.milnor_mod_c + inv.milnor


def shifted_jacobian_index(spec, c, trunc=Truncation()):
    """``ind_C^n(X) - res[det(DX - c Id) / X]`` for a regular sequence ``X``."""
    X = list(spec.X)
    DX = jacobian(X)
    shifted = [[DX[i][j] - (c if i == j else 0) for j in range(spec.n)] for i in range(spec.n)]
    r = grothendieck_residue(determinant(shifted), tuple(X), trunc)
    return poincare_hopf_index(tuple(X), trunc) - _integer(r, "residue")


def gsv_index_gomez_mont(spec, trunc=Truncation(), inv=None):
    """Gomez-Mont's formula, or ``None`` when ``X`` is not a regular sequence."""
    if any(Xi.is_zero() for Xi in spec.X) or not regular_sequence_check(list(spec.X), trunc):
        return None
    inv = inv or Invariants(spec, trunc)
    value = gomez_mont_formula(inv)
    other = shifted_jacobian_index(spec, inv.c, trunc)
    if other != value:
        raise InternalInconsistency(
            f"Gomez-Mont formula gives {value} but ind(X) - res[det(DX-c)/X] gives {other}"
        )
    return value


# -- report --------------------------------------------------------------------


@dataclass
class IndexReport:
    spec: object
    normalized: object = None
    change: list | None = None
    c: Polynomial | None = None
    c_is_polynomial: bool = True
    gsv_homological: int | None = None
    gsv_residue: int | None = None
    gsv_gomez_mont: int | None = None
    poincare_hopf: int | None = None
    euler: int | None = None
    dims: HomologyDims | None = None
    checks: dict = field(default_factory=dict)
    consistent: bool = False
    diagnostics: list = field(default_factory=list)
    orders: dict = field(default_factory=dict)
    truncation: Truncation = field(default_factory=Truncation)

    @property
    def index(self):
        for v in (self.gsv_homological, self.gsv_residue, self.gsv_gomez_mont):
            if v is not None:
                return v
        return None

    def indices(self):
        return {
            "homological": self.gsv_homological,
            "residue": self.gsv_residue,
            "gomez_mont": self.gsv_gomez_mont,
            "euler_characteristic": self.euler,
        }

    def to_dict(self):
        spec = self.spec
        names = spec.vars
        fmt = lambda p: None if p is None else format_polynomial(p, names)  # noqa: E731
        out = {
            "problem": {
                "vars": list(names),
                "f": fmt(spec.f),
                "X": [fmt(x) for x in spec.X],
            },
            "c": fmt(self.c),
            "c_is_polynomial": self.c_is_polynomial,
            "coordinate_change": [[str(v) for v in row] for row in self.change] if self.change else None,
            "h_star": self.dims.h_star if self.dims else None,
            "h": self.dims.h if self.dims else None,
            "lambda": self.dims.lam if self.dims else None,
            "milnor": self.dims.milnor if self.dims else None,
            "indices": self.indices(),
            "index_routes": self.indices(),
            "poincare_hopf": self.poincare_hopf,
            "checks": self.checks,
            "consistent": self.consistent,
            "diagnostics": list(self.diagnostics),
            "truncation": {
                "start": self.truncation.start,
                "cap": self.truncation.cap,
                "orders": {k: list(v) for k, v in self.orders.items()},
            },
        }
        return out


def full_report(spec, seed=0, trunc=Truncation()):
    """Run every applicable route and compare them.

    Route failures are collected in ``diagnostics``; the report is
    consistent only if at least two routes produced a value, all values
    agree and every internal identity check held.
    """
    report = IndexReport(spec=spec, truncation=trunc)
    c, is_poly = tangency_factor(spec.f, spec.X)
    report.c, report.c_is_polynomial = c, is_poly
    if not is_poly:
        report.diagnostics.append(
            f"c is a power series; using it truncated below degree {SERIES_ORDER} (reduced confidence)"
        )
    try:
        work, M = normalizing_change(spec, seed, trunc)
    except GSVError as exc:
        report.diagnostics.append(f"{type(exc).__name__}: {exc}")
        return report
    report.normalized, report.change = work, M
    if M is not None:
        c, _ = tangency_factor(work.f, work.X)
    inv = Invariants(work, trunc, c=c) if is_poly else Invariants(work, trunc)

    def attempt(label, fn):
        try:
            return fn()
        except GSVError as exc:
            report.diagnostics.append(f"{label}: {type(exc).__name__}: {exc}")
            return None

    dims = attempt("homology", inv.homology)
    report.dims = dims
    report.gsv_homological = attempt("homological", inv.index_from_dims)
    report.gsv_residue = attempt("residue", lambda: gsv_index_residue(work, trunc, inv.c))
    report.gsv_gomez_mont = attempt("gomez_mont", lambda: gsv_index_gomez_mont(work, trunc, inv))
    if report.gsv_gomez_mont is not None:
        report.poincare_hopf = attempt("poincare_hopf", lambda: poincare_hopf_index(tuple(work.X), trunc))
    report.orders = dict(inv.orders)

    if dims is not None:
        report.euler = dims.euler
        a, b = inv.lambda_pair
        report.checks["lambda_two_ways"] = a == b
        report.checks["exact_sequence"] = (
            inv.lam - inv.milnor_mod_f == inv.milnor_mod_c - inv.milnor
        )
        if report.gsv_homological is not None:
            report.checks["euler_identity"] = dims.euler == report.gsv_homological

    values = [v for v in (report.gsv_homological, report.gsv_residue, report.gsv_gomez_mont) if v is not None]
    routes_agree = len(values) >= 2 and len(set(values)) == 1
    if values and not routes_agree:
        report.diagnostics.append(f"routes disagree: {report.indices()}")
    report.consistent = routes_agree and all(report.checks.values()) and report.euler == report.index
    return report
