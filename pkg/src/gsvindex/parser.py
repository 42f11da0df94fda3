"""Reading and writing polynomials and problem files.

Expression grammar (explicit ``*`` everywhere)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by nonzero constants, so ``1/3*x^4`` is the
monomial with coefficient one third.

Problem files hold ``key: value`` lines (``vars``, ``f``, ``X``, optional
``c``); blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    NotAGerm,
    PolySyntaxError,
    TangencyMismatch,
    UnknownVariable,
)
from .polynomial import Polynomial, apply_vector_field

MAX_EXPONENT = 2**31 - 1

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class ProblemSpec:
    """A hypersurface germ ``f`` and a vector field ``X`` on ``(C^n, 0)``."""

    vars: tuple
    f: Polynomial
    X: tuple
    c_hint: Polynomial | None = None

    @property
    def n(self):
        return len(self.vars)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", column=start + 1)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, vars):
        self.text = text
        self.vars = list(vars)
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.n = len(self.vars)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None, cls=PolySyntaxError):
        tok = tok or self.peek()
        return cls(message, column=tok[2] + 1)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] == ")":
            raise self.error("unbalanced ')'")
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op_tok = self.advance()
            rhs = self.unary()
            if op_tok[0] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division by a non-constant", op_tok)
                if rhs.is_zero():
                    raise self.error("division by zero", op_tok)
                value = value.scale(1 / rhs.constant_term())
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "-":
            self.advance()
            return -self.unary()
        if tok[0] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            if tok[1] > MAX_EXPONENT:
                raise self.error("exponent overflow", tok)
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.advance()
        kind = tok[0]
        if kind == "int":
            return Polynomial.constant(self.n, tok[1])
        if kind == "name":
            if tok[1] not in self.index:
                raise self.error(f"unknown variable {tok[1]!r}", tok, UnknownVariable)
            return Polynomial.variable(self.n, self.index[tok[1]])
        if kind == "(":
            inner = self.expr()
            close = self.advance()
            if close[0] != ")":
                raise self.error("unbalanced '('", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok[1]!r}", tok)


def parse_polynomial(text, vars):
    """Parse ``text`` into a :class:`Polynomial` over the variables ``vars``."""
    return _Parser(text, vars).parse()


def _split_top_level(text, sep=","):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    return parts


def _parse_at(text, vars, line, offset):
    try:
        return parse_polynomial(text, vars)
    except PolySyntaxError as exc:
        col = None if exc.column is None else exc.column + offset
        raise type(exc)(exc.msg, column=col, line=line) from None


def parse_problem(text):
    """Parse and validate a problem file.

    The declared tangency factor, if present, must satisfy ``X(f) = c f``
    exactly.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, colon, value = raw.partition(":")
        key = key.strip()
        if not colon or key not in ("vars", "f", "X", "c"):
            raise PolySyntaxError(f"expected one of 'vars:', 'f:', 'X:', 'c:'", column=1, line=lineno)
        if key in fields:
            raise PolySyntaxError(f"duplicate key {key!r}", column=1, line=lineno)
        fields[key] = (value, lineno, raw.index(":") + 1)
    for key in ("vars", "f", "X"):
        if key not in fields:
            raise PolySyntaxError(f"missing '{key}:' line")

    value, lineno, _ = fields["vars"]
    names = [v for v in re.split(r"[\s,]+", value.strip()) if v]
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
            raise PolySyntaxError(f"invalid variable name {v!r}", line=lineno)
    if len(set(names)) != len(names):
        raise PolySyntaxError("repeated variable name", line=lineno)
    if len(names) < 2:
        raise ArityMismatch("at least two variables are required")

    value, lineno, off = fields["f"]
    f = _parse_at(value, names, lineno, off)
    value, lineno, off = fields["X"]
    X = tuple(_parse_at(part, names, lineno, off + start) for start, part in _split_top_level(value))
    c = None
    if "c" in fields:
        value, lineno, off = fields["c"]
        c = _parse_at(value, names, lineno, off)
    return make_problem(names, f, X, c)


def make_problem(vars, f, X, c=None):
    """Build a validated :class:`ProblemSpec` from polynomials."""
    vars = tuple(vars)
    X = tuple(X)
    if len(X) != len(vars):
        raise ArityMismatch(f"X has {len(X)} components for {len(vars)} variables")
    if f.constant_term() != 0:
        raise NotAGerm("f does not vanish at the origin")
    for i, Xi in enumerate(X, start=1):
        if Xi.constant_term() != 0:
            raise NotAGerm(f"X_{i} does not vanish at the origin")
    if c is not None and apply_vector_field(X, f) != c * f:
        raise TangencyMismatch("declared c does not satisfy X(f) = c*f")
    return ProblemSpec(vars, f, X, c)


def _format_coef(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p, vars=None):
    """Deterministic text form, terms in descending graded lexicographic order."""
    if vars is None:
        vars = default_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for exp, coef in p.sorted_terms():
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(vars, exp) if e
        )
        mag = abs(coef)
        if not mono:
            body = _format_coef(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coef(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if coef < 0 else body)
        else:
            pieces.append(f"- {body}" if coef < 0 else f"+ {body}")
    return " ".join(pieces)


def default_names(n):
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"z{i + 1}" for i in range(n))


def format_problem(spec):
    lines = [
        f"vars: {' '.join(spec.vars)}",
        f"f: {format_polynomial(spec.f, spec.vars)}",
        "X: " + ", ".join(format_polynomial(Xi, spec.vars) for Xi in spec.X),
    ]
    if spec.c_hint is not None:
        lines.append(f"c: {format_polynomial(spec.c_hint, spec.vars)}")
    return "\n".join(lines) + "\n"
