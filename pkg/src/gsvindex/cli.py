"""Command-line front end: ``gsvindex {index|residue|oracle|check} FILE``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import oracle
from .errors import GSVError, NoStabilization, OracleRefused, PolySyntaxError
from .index import full_report, normalizing_change, tangency_factor
from .local import Truncation, regular_sequence_check
from .parser import format_polynomial, parse_polynomial, parse_problem
from .polynomial import chat_numerator
from .residue import grothendieck_residue

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DISAGREE = 2
EXIT_NO_STABILIZATION = 3


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    path: str | None
    trunc_start: int = 4
    trunc_cap: int = 24
    seed: int = 0
    json: bool = False
    max_oracle_n: int = oracle.MAX_N

    def __post_init__(self):
        if self.trunc_start < 2:
            raise ValueError("--trunc-start must be at least 2")
        if self.trunc_cap < self.trunc_start:
            raise ValueError("--trunc-cap must be at least --trunc-start")

    @property
    def truncation(self):
        return Truncation(self.trunc_start, self.trunc_cap)


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _fmt_int(v):
    return "n/a" if v is None else str(v)


def _problem_lines(spec):
    names = spec.vars
    X = ", ".join(format_polynomial(x, names) for x in spec.X)
    return [
        f"vars: {', '.join(names)}",
        f"f: {format_polynomial(spec.f, names)}",
        f"X: ({X})",
    ]


# -- index ---------------------------------------------------------------------


def run_index(config):
    spec = _load(config.path)
    report = full_report(spec, seed=config.seed, trunc=config.truncation)
    if config.json:
        _emit(report.to_dict())
    else:
        names = spec.vars
        lines = _problem_lines(spec)
        if report.c is not None:
            tail = "" if report.c_is_polynomial else " + (higher order)"
            lines.append(f"c: {format_polynomial(report.c, names)}{tail}")
        lines.append(f"coordinate change: {report.change if report.change else 'none'}")
        if report.dims is not None:
            d = report.dims
            lines.append(f"h_star: {' '.join(map(str, d.h_star))}")
            lines.append(f"h: {' '.join(map(str, d.h))}")
            lines.append(f"lambda: {d.lam}")
            lines.append(f"milnor: {d.milnor}")
        routes = ", ".join(f"{k} {_fmt_int(v)}" for k, v in report.indices().items())
        lines.append(f"routes: {routes}")
        if report.poincare_hopf is not None:
            lines.append(f"poincare_hopf(X): {report.poincare_hopf}")
        for name, ok in report.checks.items():
            lines.append(f"check {name}: {'ok' if ok else 'FAILED'}")
        for msg in report.diagnostics:
            lines.append(f"note: {msg}")
        state = "consistent" if report.consistent else "INCONSISTENT"
        lines.append(f"index: {_fmt_int(report.index)} ({state})")
        print("\n".join(lines))
    if report.consistent:
        return EXIT_OK
    return EXIT_DISAGREE if report.index is not None else EXIT_ERROR


# -- residue -------------------------------------------------------------------


def run_residue(config, vars=None, num=None, den=None):
    """Inline data (``--vars/--num/--den``) or the residue formula for a problem file."""
    if num is not None or den is not None:
        if not (vars and num and den):
            raise ValueError("inline residue needs --vars, --num and --den")
        names = tuple(v.strip() for v in vars.split(","))
        h = parse_polynomial(num, names)
        gens = tuple(parse_polynomial(g, names) for g in den.split(","))
        label = f"res[{num} / ({den})]"
    elif config.path:
        spec = _load(config.path)
        n = spec.n
        work, _ = normalizing_change(spec, config.seed, config.truncation)
        c, _ = tangency_factor(work.f, work.X)
        h = work.f.derivative(n - 1) * chat_numerator(list(work.X), c)
        gens = tuple(work.X[:-1]) + (work.f,)
        label = "res[df/dz_n * chat / (X_1..X_(n-1), f)]"
    else:
        raise ValueError("residue needs a problem FILE or inline --vars/--num/--den")
    value = Fraction(grothendieck_residue(h, gens, config.truncation))
    if config.json:
        _emit({"residue": str(value), "numerator": str(value.numerator), "denominator": str(value.denominator)})
    else:
        print(str(value) if config.path is None else f"{label} = {value}")
    return EXIT_OK


# -- oracle ----------------------------------------------------------------------


def run_oracle(config):
    spec = _load(config.path)
    if spec.n > config.max_oracle_n:
        raise OracleRefused(f"oracle limited to n <= {config.max_oracle_n} (got n = {spec.n})")
    trunc = config.truncation
    report = full_report(spec, seed=config.seed, trunc=trunc)
    star, _ = oracle.homology_dims_star(spec, trunc, max_n=config.max_oracle_n)
    plain, chi, _ = oracle.homology_dims(spec, trunc, max_n=config.max_oracle_n)
    formula_star = report.dims.h_star if report.dims else None
    formula_h = report.dims.h if report.dims else None
    rows = []
    for i, v in enumerate(star):
        rows.append((f"h_{i}*", None if formula_star is None else formula_star[i], v))
    for i, v in enumerate(plain):
        rows.append((f"h_{i}", None if formula_h is None else formula_h[i], v))
    rows.append(("chi vs index", report.index, chi))
    equal = all(a == b for _, a, b in rows)
    if config.json:
        _emit({
            "rows": [{"name": n, "formula": a, "oracle": b} for n, a, b in rows],
            "oracle_h_star": star,
            "oracle_h": plain,
            "chi": chi,
            "index": report.index,
            "all_equal": equal,
        })
    else:
        print(f"{'':14}{'formula':>10}{'oracle':>10}")
        for name, a, b in rows:
            mark = "" if a == b else "  <-- differs"
            print(f"{name:14}{_fmt_int(a):>10}{_fmt_int(b):>10}{mark}")
        print("all equal" if equal else "MISMATCH")
    return EXIT_OK if equal else EXIT_DISAGREE


# -- check -----------------------------------------------------------------------


def run_check(config):
    spec = _load(config.path)
    names = spec.vars
    n = spec.n
    trunc = config.truncation
    c, is_poly = tangency_factor(spec.f, spec.X)  # NotTangent propagates
    c_text = format_polynomial(c, names) + ("" if is_poly else " + (higher order)")
    head = [f"X{i + 1}" for i in range(n - 1)]

    def regular(gens):
        if any(g.is_zero() for g in gens):
            return False
        return regular_sequence_check(gens, trunc)

    first = regular(list(spec.X[:-1]) + [spec.f])
    full = regular(list(spec.X))
    change = None
    if not first:
        _, change = normalizing_change(spec, config.seed, trunc)
    if config.json:
        _emit({
            "c": format_polynomial(c, names),
            "c_is_polynomial": is_poly,
            "first_sequence_regular": first,
            "X_regular": full,
            "coordinate_change": [[str(v) for v in row] for row in change] if change else None,
        })
    else:
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        parts = [
            f"tangent: c = {c_text}",
            f"({','.join(head + ['f'])}) regular: {yn(first)}",
            f"({','.join(head + [f'X{n}'])}) regular: {yn(full)}",
        ]
        if change:
            parts.append(f"coordinate change: {change}")
        print("; ".join(parts))
    return EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="gsvindex", description="GSV index of a vector field tangent to a hypersurface germ.")
    p.add_argument("subcommand", choices=["index", "residue", "oracle", "check"])
    p.add_argument("file", nargs="?", help="problem file")
    p.add_argument("--trunc-start", type=int, default=4)
    p.add_argument("--trunc-cap", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-oracle-n", type=int, default=oracle.MAX_N)
    p.add_argument("--vars", help="residue: comma-separated variable names")
    p.add_argument("--num", help="residue: numerator polynomial")
    p.add_argument("--den", help="residue: comma-separated denominators")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig(
            args.subcommand, args.file, args.trunc_start, args.trunc_cap, args.seed, args.json, args.max_oracle_n
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if config.subcommand != "residue" and not config.path:
        print(f"error: {config.subcommand} needs a problem FILE", file=sys.stderr)
        return EXIT_ERROR
    try:
        if config.subcommand == "index":
            return run_index(config)
        if config.subcommand == "residue":
            return run_residue(config, args.vars, args.num, args.den)
        if config.subcommand == "oracle":
            return run_oracle(config)
        return run_check(config)
    except PolySyntaxError as exc:
        print(f"SyntaxError: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NoStabilization as exc:
        print(f"NoStabilization: {exc}", file=sys.stderr)
        return EXIT_NO_STABILIZATION if config.subcommand == "oracle" else EXIT_ERROR
    except GSVError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
