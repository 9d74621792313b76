"""Command-line front end.

Subcommands: list (registry browsing), eval (pointwise evaluation), degree
(Monte Carlo column degrees), verify (named suites with report export), and
table (the bundled homotopy-group table).

Exit codes: 0 pass, 1 fail, 2 uncertified degree, 3 inconclusive, 64 usage.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import degree as degree_mod
from . import maps, table, verify
from ._version import __version__

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNCERTIFIED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 64
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bottlab", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"bottlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the registry of named maps")

    p_eval = sub.add_parser("eval", help="evaluate a registry map at a point")
    p_eval.add_argument("map")
    p_eval.add_argument(
        "point",
        help="comma-separated coordinates in the map's domain view "
        "(re,im pairs for complex slots, plain reals for real slots)",
    )

    p_deg = sub.add_parser("degree", help="Monte Carlo degree of column maps")
    p_deg.add_argument("map")
    p_deg.add_argument("--column", default="all", help='1-based column index or "all"')
    p_deg.add_argument("--samples", type=int, default=1_000_000)
    p_deg.add_argument("--seed", type=int, default=0)
    p_deg.add_argument("--h", type=float, default=1e-5)
    p_deg.add_argument("--threads", type=int, default=1)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite")
    p_ver.add_argument("--samples", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--h", type=float, default=verify.DEFAULT_H)
    p_ver.add_argument("--threads", type=int, default=1)
    p_ver.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_ver.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override one check tolerance (repeatable)",
    )
    p_ver.add_argument(
        "--n",
        default=None,
        metavar="LO..HI",
        help="n range for the phi-psi suite (default 2..5)",
    )

    p_tab = sub.add_parser("table", help="render the homotopy-group table")
    p_tab.add_argument("--format", choices=["pretty", "data"], default="pretty")

    return parser


# ------------------------------------------------------------- subcommands

def _cmd_list() -> int:
    for name, f in maps.registry().items():
        print(f"{name} S{f.domain_dim}→{f.display_target()} {f.provenance}")
    return EXIT_PASS


def _fmt_entry(v: complex) -> str:
    re = v.real if v.real != 0.0 else 0.0  # normalize -0.0
    im = v.imag if v.imag != 0.0 else 0.0
    return f"{re:.15g}{im:+.15g}j"


def _cmd_eval(name: str, point: str) -> int:
    f = maps.get_map(name)
    try:
        coords = np.array([float(p) for p in point.split(",")], dtype=float)
    except ValueError:
        raise _UsageError(f"could not parse point {point!r}") from None
    want = f.domain_dim + 1
    if coords.size != want:
        raise _UsageError(
            f"{name} lives on S^{f.domain_dim}: expected {want} coordinates, "
            f"got {coords.size}"
        )
    norm = float(np.linalg.norm(coords))
    if norm == 0.0:
        raise _UsageError("the zero vector is not a sphere point")
    if abs(norm - 1.0) > 1e-9:
        print(f"note: renormalized input ({norm:.6g} -> 1)", file=sys.stderr)
        coords = coords / norm
    val = f.eval_batch(coords[None, :])[0]
    for row in val:
        print(" ".join(_fmt_entry(v) for v in row))
    return EXIT_PASS


def _cmd_degree(args) -> int:
    theta = maps.get_map(args.map)
    n = theta.target_size
    if args.column == "all":
        columns = list(range(1, n + 1))
    else:
        try:
            columns = [int(args.column)]
        except ValueError:
            raise _UsageError(f'--column must be an index or "all", got {args.column!r}')
        if not 1 <= columns[0] <= n:
            raise _UsageError(f"column {columns[0]} outside 1..{n}")
    if theta.domain_dim != 2 * n - 1:
        raise _UsageError(
            f"{theta.name} maps S^{theta.domain_dim} into U({n}); its columns "
            "are not self-maps, so their degree is undefined"
        )
    ests = degree_mod.column_estimates(
        theta, columns, samples=args.samples, seed=args.seed, h=args.h, threads=args.threads
    )
    for j, e in zip(columns, ests):
        cert = "certified" if e.certified else "uncertified"
        print(
            f"{theta.name} column {j}: degree {e.rounded} ({cert}) "
            f"raw {e.raw:.9f} stderr {e.stderr:.3e} samples {e.samples}"
        )
    return EXIT_PASS if all(e.certified for e in ests) else EXIT_UNCERTIFIED


def _cmd_verify(args) -> int:
    tolerances = {}
    for item in args.tol:
        try:
            key, val = item.rsplit("=", 1)
            tolerances[key] = float(val)
        except ValueError:
            raise _UsageError(f"--tol wants NAME=VALUE, got {item!r}") from None
    n_range = verify.DEFAULT_N_RANGE
    if args.n is not None:
        try:
            lo, hi = args.n.split("..")
            n_range = (int(lo), int(hi))
        except ValueError:
            raise _UsageError(f"--n wants LO..HI, got {args.n!r}") from None
        if not 2 <= n_range[0] <= n_range[1]:
            raise _UsageError(f"--n range must satisfy 2 <= lo <= hi, got {args.n!r}")
    config = verify.RunConfig(
        seed=args.seed,
        samples=args.samples,
        h=args.h,
        tolerances=tolerances,
        threads=args.threads,
        out=args.out,
        n_range=n_range,
    )
    try:
        report = verify.run_suite(args.suite, config)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from None
    text = verify.serialize_report(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"{report.suite}: {report.overall} ({len(report.checks)} checks) -> {args.out}")
    else:
        sys.stdout.write(text)
    if report.overall == "PASS":
        return EXIT_PASS
    if report.overall == "INCONCLUSIVE":
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL


def _cmd_table(fmt: str) -> int:
    if fmt == "data":
        sys.stdout.write(table.render_data())
    else:
        sys.stdout.write(table.render_pretty())
    return EXIT_PASS


def _escape_negative_point(argv: list[str]) -> list[str]:
    """Let ``eval`` accept points whose first coordinate is negative: insert
    the ``--`` separator so argparse does not read ``-1,0,...`` as a flag."""
    if not argv or argv[0] != "eval" or "--" in argv:
        return argv
    out = list(argv)
    for i, tok in enumerate(out):
        if re.fullmatch(r"-[0-9+\-.,eE]+", tok):
            out.insert(i, "--")
            break
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_escape_negative_point(list(argv)))
        if args.command == "list":
            return _cmd_list()
        if args.command == "eval":
            return _cmd_eval(args.map, args.point)
        if args.command == "degree":
            return _cmd_degree(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "table":
            return _cmd_table(args.format)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"bottlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"bottlab: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bottlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help/--version
        return int(exc.code or 0)


def main_entry() -> None:
    raise SystemExit(main())
