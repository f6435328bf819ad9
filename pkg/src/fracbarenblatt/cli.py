"""Command-line front end.

Exit codes: 0 success, 1 invalid arguments, 2 numerical failure, 3 I/O error.
"""

import argparse
import contextlib
import logging
import sys

import numpy as np

from . import __version__
from .classical import classical_profile, classical_support, limit_profile, limit_support
from .kernel import FractionalParams
from .mass import BracketError, find_support
from .order import TABLE_ALPHAS, TABLE_MS, estimate_order
from .profile import DEFAULT_STEPS, SEED_RULES, solve_profile
from .reconstruct import (SpaceTimeSolution, profile_rows, space_time_rows,
                          total_mass, write_table)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3
CLASSICAL_ALPHA = 0.999


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(kind):
    def conv(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value
    return conv


def _times(text):
    values = [float(v) for v in text.split(",") if v.strip()]
    if not values or any(not v > 0 for v in values):
        raise argparse.ArgumentTypeError(f"times must be positive numbers, got {text!r}")
    return values


def build_parser():
    parser = _Parser(prog="fracbarenblatt", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, alpha=True, z0=None):
        if alpha:
            p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--m", type=float, required=True)
        if z0 == "fixed":
            p.add_argument("--z0", type=_positive(float), required=True)
        elif z0 == "init":
            p.add_argument("--z0-init", type=_positive(float), default=1.0)
        p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
        p.add_argument("--tol", type=float, default=1e-4)
        p.add_argument("--seed", choices=SEED_RULES, default="reference",
                       help="boundary constant for U_1")
        p.add_argument("--out", default="-", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("solve", help="profile on [-z0, 0] for a fixed z0")
    common(p, z0="fixed")
    p.add_argument("--reflect", action="store_true", help="emit the even extension")

    p = sub.add_parser("mass-match", help="find z0* with unit mass and emit the profile")
    common(p, z0="init")
    p.add_argument("--reflect", action="store_true")

    p = sub.add_parser("reconstruct", help="u(x, t) of the mass-matched solution")
    common(p, z0="init")
    p.add_argument("--times", type=_times, default=[0.5, 1.0, 2.0, 10.0])

    p = sub.add_parser("order", help="empirical convergence order from N, 2N, 4N")
    p.add_argument("--alpha", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--z0", type=_positive(float), help="fixed z0 (default: mass-matched)")
    p.add_argument("--steps", type=int, default=2**11, help="base N")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--table", action="store_true",
                   help="all 25 (alpha, m) pairs of the reference order table")
    p.add_argument("--seed", choices=SEED_RULES, default="reference")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("classical-compare",
                       help="fractional solution at alpha=0.999 against closed forms")
    common(p, alpha=False, z0="init")
    return parser


def _validate(args):
    if getattr(args, "alpha", None) is not None and not 0.0 < args.alpha < 1.0:
        raise UsageError(f"--alpha must lie in (0, 1), got {args.alpha}")
    if getattr(args, "m", None) is not None and not args.m > 0:
        raise UsageError(f"--m must be positive, got {args.m}")
    if args.steps < 2:
        raise UsageError(f"--steps must be at least 2, got {args.steps}")
    if not args.tol > 0:
        raise UsageError(f"--tol must be positive, got {args.tol}")
    if args.command == "order":
        if args.steps < 64:
            raise UsageError("order needs --steps >= 64")
        if not args.table and (args.alpha is None or args.m is None):
            raise UsageError("order needs --alpha and --m, or --table")


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _emit(args, columns, rows, meta):
    with _open_out(args.out) as fh:
        write_table(fh, columns, rows, meta, args.format)


def _matched(args, p):
    res = find_support(p, args.steps, args.tol, args.z0_init, seed=args.seed)
    print(f"z0*={res.z0_star:.17g} residual={res.residual:.3e} "
          f"iterations={res.iterations} evaluations={res.evaluations}", file=sys.stderr)
    return res


def cmd_solve(args):
    p = FractionalParams(args.alpha, args.m)
    prof = solve_profile(p, args.z0, args.steps, seed=args.seed)
    meta = {"command": "solve", "alpha": p.alpha, "m": p.m, "z0": args.z0,
            "N": args.steps, "tol": args.tol, "seed": args.seed}
    _emit(args, ["z", "U"], profile_rows(prof, args.reflect), meta)


def cmd_mass_match(args):
    p = FractionalParams(args.alpha, args.m)
    res = _matched(args, p)
    meta = {"command": "mass-match", "alpha": p.alpha, "m": p.m, "z0_star": res.z0_star,
            "N": args.steps, "tol": args.tol, "seed": args.seed, "residual": res.residual,
            "iterations": res.iterations}
    _emit(args, ["z", "U"], profile_rows(res.profile, args.reflect), meta)


def cmd_reconstruct(args):
    p = FractionalParams(args.alpha, args.m)
    res = _matched(args, p)
    sol = SpaceTimeSolution(res.profile)
    meta = {"command": "reconstruct", "alpha": p.alpha, "m": p.m, "z0_star": res.z0_star,
            "N": args.steps, "tol": args.tol, "seed": args.seed, "exponent": sol.similarity_exponent}
    for t in args.times:
        meta[f"mass_t{t:g}"] = float(total_mass(sol, t))
    _emit(args, ["x", "t", "u"], space_time_rows(sol, args.times), meta)


def cmd_order(args):
    pairs = ([(a, m) for a in TABLE_ALPHAS for m in TABLE_MS] if args.table
             else [(args.alpha, args.m)])
    rows = []
    for a, m in pairs:
        rep = estimate_order(FractionalParams(a, m), args.z0, args.steps, tol=args.tol,
                             seed=args.seed)
        rows.append((a, m, args.steps, rep.z0, rep.diff_coarse, rep.diff_fine,
                     rep.p_estimate, rep.p_origin))
        print(f"alpha={a:g} m={m:g} p={rep.p_estimate:.3f}", file=sys.stderr)
    meta = {"command": "order", "base_N": args.steps, "tol": args.tol, "seed": args.seed}
    _emit(args, ["alpha", "m", "N", "z0", "diff_coarse", "diff_fine", "p", "p_origin"],
          rows, meta)


def cmd_classical_compare(args):
    p = FractionalParams(CLASSICAL_ALPHA, args.m)
    res = _matched(args, p)
    z, u = res.profile.nodes, res.profile.values
    closed = np.array([classical_profile(p.m, zi) for zi in z])
    limit = np.array([limit_profile(p.m, zi) for zi in z])
    meta = {"command": "classical-compare", "alpha": p.alpha, "m": p.m, "N": args.steps,
            "tol": args.tol, "seed": args.seed, "z0_num": res.z0_star, "z0_exact": classical_support(p.m),
            "z0_limit": limit_support(p.m),
            "max_error_exact": float(np.abs(u - closed).max()),
            "max_error_limit": float(np.abs(u - limit).max())}
    print(f"z0 num={res.z0_star:.4f} exact={meta['z0_exact']:.4f} "
          f"limit={meta['z0_limit']:.4f} max_error_exact={meta['max_error_exact']:.3e}",
          file=sys.stderr)
    rows = list(zip(z.tolist(), u.tolist(), closed.tolist(), limit.tolist(),
                    np.abs(u - closed).tolist()))
    _emit(args, ["z", "U_num", "U_exact", "U_limit", "abs_error"], rows, meta)


COMMANDS = {
    "solve": cmd_solve,
    "mass-match": cmd_mass_match,
    "reconstruct": cmd_reconstruct,
    "order": cmd_order,
    "classical-compare": cmd_classical_compare,
}


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
    except UsageError as exc:
        print(f"fracbarenblatt: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        COMMANDS[args.command](args)
    except BracketError as exc:
        print(f"fracbarenblatt: {exc}", file=sys.stderr)
        for z0, f in exc.history:
            print(f"  z0={z0:.6g} F={f:.6g}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"fracbarenblatt: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"fracbarenblatt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
