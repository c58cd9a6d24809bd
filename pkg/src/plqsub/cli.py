"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation error (the three verbatim
input-gate messages, parse failures, bad parameter values), 3 internal
consistency failure.

Functions are read from files in either accepted format (PLQ text or JSON,
sniffed by a leading ``{``).  Grids are given as ``lo:hi:n``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .core import check, eval_grid, loads, serialize_plq, to_json
from .epssub import EpsQuery, eps_subdifferential
from .errors import (
    MSG_NOT_PLQ,
    ConsistencyError,
    DomainError,
    InvalidPlqError,
    NotConvexError,
)
from .extreal import DEFAULT_TOL, format_ext
from .oracle import oracle_eps_interval, oracle_member
from .sweep import br_witness, graph_to_csv, graph_to_json, sweep_eps, sweep_x
from .transforms import conjugate, plq_min, subdifferential
from .viz import animate, export, render_views


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise _UsageError(message)


def _grid(spec: str) -> list[float]:
    try:
        lo_s, hi_s, n_s = spec.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must be lo:hi:n, got {spec!r}"
        ) from None
    if n < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    if n == 1:
        return [lo]
    return list(np.linspace(lo, hi, n))


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidPlqError(f"{MSG_NOT_PLQ}\ncannot read {path}: {exc}") from None
    try:
        return loads(text)
    except InvalidPlqError as exc:
        raise InvalidPlqError(f"{MSG_NOT_PLQ}\n{exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _function_text(f, fmt: str) -> str:
    return to_json(f) if fmt == "json" else serialize_plq(f)


def build_parser() -> _Parser:
    top = _Parser(prog="plqsub", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plq", required=True, help="path to a PLQ text or JSON file")
    common.add_argument(
        "--tol",
        type=float,
        default=float(os.environ.get("PLQSUB_TOL", DEFAULT_TOL)),
        help="comparison tolerance (default from PLQSUB_TOL or 1e-9)",
    )

    p = sub.add_parser("check", parents=[common], help="validate a PLQ file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("eval", parents=[common], help="evaluate on a grid or a point")
    p.add_argument("--grid", type=_grid)
    p.add_argument("--xbar", type=float, help="single evaluation point")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("conjugate", parents=[common], help="Legendre-Fenchel conjugate")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("min", parents=[common], help="pointwise minimum of two functions")
    p.add_argument("--plq2", required=True, help="path to the second function")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_min)

    p = sub.add_parser("subdiff", parents=[common], help="exact subdifferential at a point")
    p.add_argument("--xbar", type=float, required=True)
    p.set_defaults(func=_cmd_subdiff)

    p = sub.add_parser("epssub", parents=[common], help="ε-subdifferential at a point")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=_cmd_epssub)

    p = sub.add_parser("oracle", parents=[common], help="brute-force interval / membership")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--slope", type=float, help="test membership of this slope instead")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("sweep-x", parents=[common], help="interval along a grid of points")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep_x)

    p = sub.add_parser("sweep-eps", parents=[common], help="interval along a grid of ε")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep_eps)

    p = sub.add_parser("br-check", parents=[common], help="rectangle witness check")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lam", type=float, required=True, help="rectangle half-width λ")
    p.add_argument("--slope", type=float, help="ε-subgradient s (default: computed lower endpoint)")
    p.set_defaults(func=_cmd_br_check)

    p = sub.add_parser("render", parents=[common], help="primal/dual/subdifferential views")
    p.add_argument("--xbar", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--format", choices=("svg", "csv", "json"), default="svg")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("animate", parents=[common], help="numbered SVG frames along a sweep")
    p.add_argument("--axis", choices=("x", "eps"), required=True)
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--eps", type=float, help="fixed ε for --axis x")
    p.add_argument("--xbar", type=float, help="fixed x̄ for --axis eps")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_animate)

    return top


def _cmd_check(args) -> int:
    f = _load(args.plq)
    report = check(f)
    print("ok" if report.ok else "; ".join(report.violations))
    return 0 if report.ok else 2


def _cmd_eval(args) -> int:
    f = _load(args.plq)
    if args.grid is None and args.xbar is None:
        raise _UsageError("eval needs --grid or --xbar")
    xs = args.grid if args.grid is not None else [args.xbar]
    vals = eval_grid(f, sorted(xs))
    for x, v in zip(sorted(xs), vals):
        print(f"{format_ext(x)} {format_ext(float(v))}")
    return 0


def _cmd_conjugate(args) -> int:
    f = _load(args.plq)
    _emit(_function_text(conjugate(f, args.tol), args.format), args.out)
    return 0


def _cmd_min(args) -> int:
    f, g = _load(args.plq), _load(args.plq2)
    _emit(_function_text(plq_min(f, g, args.tol), args.format), args.out)
    return 0


def _cmd_subdiff(args) -> int:
    f = _load(args.plq)
    iv = subdifferential(f, args.xbar, args.tol)
    print("empty" if iv is None else str(iv))
    return 0


def _cmd_epssub(args) -> int:
    f = _load(args.plq)
    res = eps_subdifferential(f, EpsQuery(args.xbar, args.eps, args.tol))
    print(str(res.interval))
    return 0


def _cmd_oracle(args) -> int:
    f = _load(args.plq)
    q = EpsQuery(args.xbar, args.eps, args.tol)
    if args.slope is not None:
        print("member" if oracle_member(f, q, args.slope) else "not a member")
    else:
        print(str(oracle_eps_interval(f, q)))
    return 0


def _cmd_sweep_x(args) -> int:
    f = _load(args.plq)
    graph = sweep_x(f, args.eps, args.grid, args.tol)
    _emit(graph_to_csv(graph) if args.format == "csv" else graph_to_json(graph), args.out)
    return 0


def _cmd_sweep_eps(args) -> int:
    f = _load(args.plq)
    graph = sweep_eps(f, args.xbar, args.grid, args.tol)
    _emit(graph_to_csv(graph) if args.format == "csv" else graph_to_json(graph), args.out)
    return 0


def _cmd_br_check(args) -> int:
    f = _load(args.plq)
    q = EpsQuery(args.xbar, args.eps, args.tol)
    s = args.slope
    if s is None:
        res = eps_subdifferential(f, q)
        s = res.interval.lo
        if s == float("-inf"):
            s = res.interval.hi if res.interval.hi != float("inf") else 0.0
    w = br_witness(f, q, s, args.lam)
    print(f"lambda={format_ext(w.lam)} x={format_ext(w.x_lam)} s={format_ext(w.s_lam)}")
    return 0


def _cmd_render(args) -> int:
    f = _load(args.plq)
    bundle = render_views(f, EpsQuery(args.xbar, args.eps, args.tol))
    export(bundle, args.format, args.out)
    print(args.out)
    return 0


def _cmd_animate(args) -> int:
    f = _load(args.plq)
    paths = animate(
        f,
        axis=args.axis,
        grid=args.grid,
        eps=args.eps,
        x_bar=args.xbar,
        out_dir=args.out,
        tol=args.tol,
    )
    print(f"{len(paths)} frames in {args.out}")
    return 0


def cli_dispatch(argv: list[str] | None = None) -> int:
    """Parse ``argv`` and run one subcommand, mapping errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except (InvalidPlqError, NotConvexError, DomainError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
