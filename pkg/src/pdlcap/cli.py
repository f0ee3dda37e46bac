"""
Command-line front end.

All values are in bits; there is deliberately no option to change the
logarithm base.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import closedform as cf
from . import region as rg
from . import svg
from .channel import ChannelParams
from .errors import DomainError, ResourceLimitError, ValidationError
from .verification import run_checks

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _probability(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _resolution(text: str) -> int:
    v = _positive_int(text)
    if not 2 <= v <= rg.MAX_RESOLUTION:
        raise argparse.ArgumentTypeError(f"must be in [2, {rg.MAX_RESOLUTION}], got {v}")
    return v


def _n_list(text: str) -> list[int]:
    try:
        items = [_positive_int(t.strip()) for t in text.split(",") if t.strip()]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad entry in list: {exc}") from None
    if not items:
        raise argparse.ArgumentTypeError("list must not be empty")
    return items


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ph", type=_probability, required=True, help="transmission factor for H")
    p.add_argument("--pv", type=_probability, required=True, help="transmission factor for V")


def _add_output(p: argparse.ArgumentParser, formats: list[str], default: str) -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--out", default="-", help="output path, '-' for standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdlcap", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="superadditivity report at one parameter point")
    _add_params(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mmax", type=_nonneg_int, default=6)
    _add_output(p, ["text", "json"], "text")

    p = sub.add_parser("q1", help="optimal one-shot diagonal state")
    _add_params(p)
    _add_output(p, ["text", "json"], "text")

    p = sub.add_parser("wn", help="w_n weight for one or more block lengths")
    _add_params(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_positive_int)
    g.add_argument("--n-list", type=_n_list)
    _add_output(p, ["text", "json", "csv"], "text")

    p = sub.add_parser("bound", help="doubling-series lower bound on Q - Q1")
    _add_params(p)
    p.add_argument("--mmax", type=_nonneg_int, default=6)
    _add_output(p, ["text", "json"], "text")

    p = sub.add_parser("region", help="classification / superadditivity grid")
    p.add_argument("--res", type=_resolution, required=True)
    p.add_argument("--n-list", type=_n_list, required=True)
    p.add_argument("--threads", type=_positive_int, default=None)
    _add_output(p, ["csv", "json", "svg"], "csv")

    p = sub.add_parser("boundary", help="zero level of w_n by ray bisection")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_positive_int)
    g.add_argument("--n-list", type=_n_list)
    p.add_argument("--rays", type=_positive_int, default=50)
    _add_output(p, ["csv", "json", "svg"], "csv")

    p = sub.add_parser("verify", help="closed-form vs oracle self-checks")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def _cmd_point(args) -> str:
    params = ChannelParams(args.ph, args.pv)
    sol = cf.solve_q1(params)
    rep = cf.report(params, args.n, sol)
    payload = {
        "classification": rep.classification.value,
        "q1": rep.q1,
        "w_n": rep.w_n,
        "benefit": rep.benefit,
        "qn_lower": rep.qn_lower,
        "doubling_bound": cf.doubling_series_bound(params, sol, args.mmax),
    }
    if args.format == "json":
        return rg.to_json(payload)
    width = max(len(k) for k in payload)
    lines = [f"p_h = {args.ph}, p_v = {args.pv}, n = {args.n}  (bits)"]
    lines += [f"{k:<{width}}  {v}" for k, v in payload.items()]
    lines.append(f"{'superadditive':<{width}}  {rep.superadditive}")
    return "\n".join(lines) + "\n"


def _cmd_q1(args) -> str:
    sol = cf.solve_q1(ChannelParams(args.ph, args.pv))
    payload = {
        "rho_hh": sol.state.rho_hh,
        "rho_vv": sol.state.rho_vv,
        "q1": sol.q1,
        "degenerate": sol.degenerate,
    }
    if args.format == "json":
        return rg.to_json(payload)
    return "".join(f"{k} {v}\n" for k, v in payload.items())


def _cmd_wn(args) -> str:
    params = ChannelParams(args.ph, args.pv)
    ns = args.n_list or [args.n]
    values = [(n, cf.w_n(params, n)) for n in ns]
    if args.format == "json":
        return rg.to_json([{"n": n, "w_n": w} for n, w in values])
    if args.format == "csv":
        return "n,w_n\n" + "".join(f"{n},{w:.12g}\n" for n, w in values)
    return "".join(f"w_{n} = {w}\n" for n, w in values)


def _cmd_bound(args) -> str:
    params = ChannelParams(args.ph, args.pv)
    sol = cf.solve_q1(params)
    value = cf.doubling_series_bound(params, sol, args.mmax)
    if args.format == "json":
        return rg.to_json({"m_max": args.mmax, "q1": sol.q1, "doubling_bound": value})
    return f"q1 = {sol.q1}\nQ - Q1 >= {value}  (m_max = {args.mmax})\n"


def _cmd_region(args) -> str:
    threads = args.threads or rg.default_threads()
    grid = rg.scan(args.res, args.n_list, threads=threads)
    if args.format == "csv":
        return rg.grid_to_csv(grid)
    if args.format == "json":
        return rg.to_json(rg.grid_to_dict(grid))
    return svg.region_svg(grid)


def _cmd_boundary(args) -> str:
    ns = args.n_list or [args.n]
    if min(ns) < 2:
        raise UsageError("boundary needs n >= 2")
    curves = [rg.boundary(n, args.rays) for n in ns]
    if args.format == "csv":
        body = "".join(rg.boundary_to_csv(c).split("\n", 1)[1] for c in curves)
        return "n,p_h,p_v\n" + body
    if args.format == "json":
        return rg.to_json([rg.boundary_to_dict(c) for c in curves])
    return svg.boundary_svg(curves)


COMMANDS = {
    "point": _cmd_point,
    "q1": _cmd_q1,
    "wn": _cmd_wn,
    "bound": _cmd_bound,
    "region": _cmd_region,
    "boundary": _cmd_boundary,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        results = run_checks(args.level, seed=args.seed)
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
        failed = [r.name for r in results if not r.passed]
        if failed:
            print(f"{len(failed)} check(s) failed: {'; '.join(failed)}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    try:
        text = COMMANDS[args.command](args)
    except (UsageError, ValidationError, DomainError, ResourceLimitError) as exc:
        print(f"pdlcap {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"pdlcap {args.command}: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
