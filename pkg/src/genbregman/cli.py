"""Command-line interface: ``gbd eval | grid | check | discover-sigma | prox``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .analysis import SIDES, prox
from .catalog import CatalogError, catalog_fn, catalog_op, fn_names, op_names, param_grid
from .checks import SUITES, run_suite
from .discovery import sigma_estimate, trace_to_csv
from .gbd import CLOSED_FORM_NAMES, CLOSURES, VARIANTS, GbdSpec, closed_form_eval, gbd_eval
from .representatives import REP_NAMES, RepError, rep_by_name
from .xreal import INF

DEFAULT_TOL = 1e-12


class UsageError(Exception):
    pass


def format_value(v: float, tol: float = DEFAULT_TOL) -> str:
    """15 significant digits; ``|v| <= tol`` prints as ``0`` and ``+inf`` as ``inf``."""
    if v == INF:
        return "inf"
    if abs(v) <= tol:
        return "0"
    return f"{v:.15g}"


def _fn_from_tokens(tokens):
    name, *params = tokens
    name = name.replace("-", "_")
    try:
        return catalog_fn(name, *[float(p) for p in params])
    except (CatalogError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _distance_from_tokens(tokens):
    """A closed-form name, or ``<operator> <rep> <variant> [closure]``."""
    if len(tokens) == 1:
        name = tokens[0]
        if name not in CLOSED_FORM_NAMES:
            raise UsageError(f"unknown closed-form distance {name!r}")
        return name
    if len(tokens) not in (3, 4):
        raise UsageError("a distance is a closed-form name or '<operator> <rep> <variant> [closure]'")
    try:
        op = catalog_op(tokens[0])
        rep = rep_by_name(tokens[1])
    except (CatalogError, RepError) as exc:
        raise UsageError(str(exc)) from None
    if tokens[2] not in VARIANTS:
        raise UsageError(f"variant must be one of {VARIANTS}")
    closure = tokens[3] if len(tokens) == 4 else "raw"
    if closure not in CLOSURES:
        raise UsageError(f"closure must be one of {CLOSURES}")
    return GbdSpec(op, rep, tokens[2], closure)


def _evaluator(dist):
    if isinstance(dist, str):
        return lambda x, y: closed_form_eval(dist, x, y)
    return lambda x, y: gbd_eval(dist, x, y)


def _surface_evaluator(name):
    if name in CLOSED_FORM_NAMES:
        return lambda x, y: closed_form_eval(name, x, y)
    try:
        rep = rep_by_name(name)
    except (RepError, CatalogError) as exc:
        raise UsageError(f"unknown surface {name!r}: {exc}") from None
    return rep


def _threads():
    raw = os.environ.get("GBD_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"GBD_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("GBD_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _range(vals, flag):
    lo, hi, n = float(vals[0]), float(vals[1]), vals[2]
    try:
        n = int(n)
    except ValueError:
        raise UsageError(f"{flag} count must be an integer") from None
    if n < 2 or not lo < hi:
        raise UsageError(f"{flag} needs lo < hi and count >= 2")
    return param_grid(lo, hi, n)


def cmd_eval(args, out):
    dist = _distance_from_tokens(args.dist)
    v = _evaluator(dist)(args.x, args.y)
    print(format_value(v, args.tol), file=out)
    return 0


def cmd_grid(args, out):
    f = _surface_evaluator(args.surface)
    xs = _range(args.xr, "--xr")
    ys = _range(args.yr, "--yr")

    def row(x):
        return [f(float(x), float(y)) for y in ys]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(row, xs))
    lines = ["x,y,value"]
    for x, vals in zip(xs, rows):
        for y, v in zip(ys, vals):
            lines.append(f"{float(x)!r},{float(y)!r},{format_value(v, args.tol)}")
    text = "\n".join(lines) + "\n"
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {args.out}: {exc}") from None
    print(f"wrote {len(lines) - 1} rows to {args.out}", file=out)
    return 0


def cmd_check(args, out):
    results = run_suite(args.what, seed=args.seed)
    passed = all(a.passed for a in results)
    report = {
        "what": args.what,
        "seed": args.seed,
        "passed": passed,
        "assertions": [a.to_dict() for a in results],
    }
    print(json.dumps(report, indent=2, sort_keys=True), file=out)
    if not passed:
        failed = [a.name for a in results if not a.passed]
        print("failed: " + "; ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_discover_sigma(args, out):
    if args.angles < 2:
        raise UsageError("--angles must be at least 2")
    est, trace = sigma_estimate(tuple(args.z), args.angles)
    print(format_value(est, args.tol), file=out)
    if args.trace:
        try:
            with open(args.trace, "w", encoding="utf-8", newline="") as fh:
                trace_to_csv(trace, fh)
        except OSError as exc:
            raise RuntimeError(f"cannot write {args.trace}: {exc}") from None
    return 0


def cmd_prox(args, out):
    theta = _fn_from_tokens(args.theta)
    dist = _distance_from_tokens(args.spec)
    if not args.gamma > 0:
        raise UsageError("--gamma must be positive")
    r = prox(theta, dist, args.gamma, args.side, args.anchor)
    print(f"minimizer {format_value(r.minimizer, args.tol)}", file=out)
    print(f"value {format_value(r.value, args.tol)}", file=out)
    return 0


def list_names() -> dict[str, list[str]]:
    return {
        "commands": ["eval", "grid", "check", "discover-sigma", "prox"],
        "functions": fn_names(),
        "operators": op_names(),
        "representatives": list(REP_NAMES),
        "distances": list(CLOSED_FORM_NAMES),
        "variants": list(VARIANTS),
        "closures": list(CLOSURES),
        "sides": list(SIDES),
        "checks": list(SUITES),
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help=f"print |v| <= tol as 0 (default {DEFAULT_TOL:g})")

    p = argparse.ArgumentParser(prog="gbd", description="Generalized Bregman distance toolkit.",
                                parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--list", action="store_true", help="list every accepted name and exit")
    sub = p.add_subparsers(dest="command")

    e = sub.add_parser("eval", parents=[common], help="evaluate a distance at one point")
    e.add_argument("--dist", nargs="+", required=True, metavar="NAME",
                   help="closed-form name, or: operator rep variant [closure]")
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--y", type=float, required=True)
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("grid", parents=[common], help="write a surface on a grid to CSV")
    g.add_argument("--surface", required=True, help="representative or closed-form distance name")
    g.add_argument("--xr", nargs=3, required=True, metavar=("LO", "HI", "N"))
    g.add_argument("--yr", nargs=3, required=True, metavar=("LO", "HI", "N"))
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_grid)

    c = sub.add_parser("check", parents=[common], help="run an invariant suite")
    c.add_argument("--what", required=True, choices=SUITES)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("discover-sigma", parents=[common], help="supporting-line estimate of sigma_log")
    d.add_argument("--z", nargs=2, type=float, required=True, metavar=("Z1", "Z2"))
    d.add_argument("--angles", type=int, default=200)
    d.add_argument("--trace", help="write the probe trace to this CSV file")
    d.set_defaults(func=cmd_discover_sigma)

    x = sub.add_parser("prox", parents=[common], help="GBD proximity operator of a catalog function")
    x.add_argument("--theta", nargs="+", required=True, metavar="TOKEN",
                   help="function name and parameters, e.g. energy-shift 3")
    x.add_argument("--spec", nargs="+", required=True, metavar="TOKEN",
                   help="closed-form name, or: operator rep variant [closure]")
    x.add_argument("--gamma", type=float, required=True)
    x.add_argument("--side", choices=SIDES, default="left")
    x.add_argument("--anchor", type=float, required=True)
    x.set_defaults(func=cmd_prox)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "tol"):
        args.tol = DEFAULT_TOL
    if args.list:
        for group, names in list_names().items():
            print(f"{group}: {' '.join(names)}", file=out)
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"gbd: usage error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"gbd: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
