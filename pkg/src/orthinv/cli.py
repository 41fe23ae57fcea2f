"""Command-line front end: ``orthinv group|verify|compute|export-magma``.

Exit codes: 0 PASS, 1 FAIL, 2 usage error, 3 internal anomaly.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .errors import ClosureBudgetExceeded, NoGeneratorFound, OrthinvError, PolySyntaxError
from .fields import is_prime, is_square
from .invariants import fixed_space, hilbert_dims, relative_reynolds, reynolds, transfer
from .magma import MAGMA_SUITES, magma_script
from .matgroups import ProductGroup, orthogonal_group, special_subgroup
from .polyring import format_poly, parse_poly
from .suites import SUITE_MAX_P, SUITES, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ANOMALY = 0, 1, 2, 3
DEFAULT_MAX_P = 97
ELEMENTS_MAX_P = 13
GROUPS = ("so2plus", "o2plus", "o2minus", "product")


class UsageError(Exception):
    pass


def _max_p() -> int | None:
    raw = os.environ.get("ORTHINV_MAX_P")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ORTHINV_MAX_P must be an integer, got {raw!r}")


def check_prime(p: int, limit: int | None = None) -> None:
    if p < 3 or not is_prime(p):
        raise UsageError("p must be an odd prime")
    override = _max_p()
    bound = override if override is not None else (DEFAULT_MAX_P if limit is None else limit)
    if p > bound:
        raise UsageError(f"p = {p} exceeds the supported limit {bound} (set ORTHINV_MAX_P to raise it)")


def check_lambda(p: int, lam) -> int | None:
    if lam is None:
        return None
    if is_square(lam % p, p):
        raise UsageError(f"lambda = {lam} must be a non-square mod {p}")
    return lam % p


def _group(kind: str, p: int, lam):
    if kind == "so2plus":
        return special_subgroup(orthogonal_group(p, "plus"))
    if kind == "o2plus":
        return orthogonal_group(p, "plus")
    G = orthogonal_group(p, "minus", lam)
    return ProductGroup(G) if kind == "product" else G


def _parse(text: str, p: int):
    try:
        return parse_poly(text, p)
    except PolySyntaxError as exc:
        raise UsageError(f"{exc}\n{exc.caret()}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_group(args) -> int:
    check_prime(args.p)
    lam = check_lambda(args.p, args.lam)
    G = orthogonal_group(args.p, args.type, lam)
    if args.show == "order":
        print(G.order)
    elif args.show == "generators":
        for g in G.generators:
            print(g.rows())
        if G.generator_note:
            print(f"note: {G.generator_note}")
    else:
        if args.p > ELEMENTS_MAX_P:
            raise UsageError(f"element listing is limited to p <= {ELEMENTS_MAX_P}")
        for g in G:
            print(g.rows())
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.suite == "example-p3" and args.p != 3:
        raise UsageError("suite example-p3 requires --p 3")
    check_prime(args.p, SUITE_MAX_P[args.suite])
    lam = check_lambda(args.p, args.lam)
    if args.max_degree is not None and args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    try:
        report = run_suite(args.suite, args.p, lam=lam, max_degree=args.max_degree, seed=args.seed)
    except ValueError as exc:
        # e.g. a max degree below the largest generator degree
        raise UsageError(str(exc))
    print(report.render())
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_compute(args) -> int:
    check_prime(args.p)
    lam = check_lambda(args.p, args.lam)
    G = _group(args.group, args.p, lam)
    op = args.operation
    if op in ("reynolds", "transfer", "relative-reynolds"):
        if args.poly is None:
            raise UsageError(f"compute {op} needs --poly")
        f = _parse(args.poly, args.p)
        if op == "reynolds":
            result = reynolds(G, f)
        elif op == "transfer":
            result = transfer(G, f)
        else:
            if args.group != "o2plus":
                raise UsageError("relative-reynolds is defined for --group o2plus (over SO2+)")
            result = relative_reynolds(G, special_subgroup(G), f)
        print(format_poly(result))
    elif op == "fixed-space":
        if args.degree is None:
            raise UsageError("compute fixed-space needs --degree")
        basis = fixed_space(G, args.degree).basis(args.degree)
        print(f"dim {len(basis)}")
        for f in basis:
            print(format_poly(f))
    else:
        if args.max_degree is None:
            raise UsageError("compute hilbert needs --max-degree")
        print(hilbert_dims(G, args.max_degree))
    return EXIT_PASS


def cmd_export(args) -> int:
    if args.suite not in MAGMA_SUITES:
        raise UsageError(f"suite {args.suite!r} cannot be exported; choose from {', '.join(MAGMA_SUITES)}")
    check_prime(args.p, SUITE_MAX_P[args.suite])
    if args.suite == "example-p3" and args.p != 3:
        raise UsageError("suite example-p3 requires --p 3")
    lam = check_lambda(args.p, args.lam)
    script = magma_script(args.suite, args.p, lam, args.max_degree)
    Path(args.out).write_bytes(script.encode("utf-8"))
    print(f"wrote {args.out}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthinv", description="Invariants of finite orthogonal groups O2+-(F_p).")
    parser.add_argument("--version", action="version", version=f"orthinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="order, generators or elements of O2+ / O2-")
    g.add_argument("--type", choices=("plus", "minus"), required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--lambda", dest="lam", type=int)
    g.add_argument("--show", choices=("order", "elements", "generators"), default="order")
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--lambda", dest="lam", type=int)
    v.add_argument("--max-degree", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compute", help="apply an operator or count invariants")
    c.add_argument("operation", choices=("reynolds", "transfer", "relative-reynolds", "fixed-space", "hilbert"))
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--group", choices=GROUPS, required=True)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--degree", type=int)
    c.add_argument("--max-degree", type=int)
    c.add_argument("--poly")
    c.set_defaults(func=cmd_compute)

    e = sub.add_parser("export-magma", help="write a Magma script recomputing a suite")
    e.add_argument("--suite", required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--lambda", dest="lam", type=int)
    e.add_argument("--max-degree", type=int)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"orthinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoGeneratorFound, ClosureBudgetExceeded) as exc:
        print(f"orthinv: internal anomaly: {exc}", file=sys.stderr)
        return EXIT_ANOMALY
    except OrthinvError as exc:
        print(f"orthinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
