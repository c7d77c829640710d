"""Command-line front end: ``kahlerstar {star,verify,expand,fock,cache}``.

Exit codes: 0 success, 1 a check failed, 2 usage or evaluation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import cache as cache_mod
from .combinatorics import alpha, beta, c_covariant
from .expr import ExprSyntaxError, format_ring, parse_expr, ring_to_json
from .fock import FockIndex, FockVector, Generator, ladder_apply, matrix_rep
from .oracles import HypParams, bordemann_F, bordemann_hyp_target, hyp_expand
from .report import Report, dumps
from .ring import Space
from .scalars import PoleError, expand_series, poly_str
from .star import star_exact, star_trunc, star_trunc_right
from .suites import SUITES, SuiteConfig, UnknownSuiteError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CLIError(Exception):
    pass


def _space(args) -> Space:
    return Space.from_name(args.space, args.dim)


def _emit(payload: dict, out: Optional[str] = None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _series_text(coeffs) -> str:
    cs = [Fraction(c) for c in coeffs]
    return poly_str(cs, "h", ascending=True) if any(cs) else "0"


# ---------------------------------------------------------------------------
# star


def cmd_star(args) -> int:
    sp = _space(args)
    f, g = parse_expr(args.f, sp), parse_expr(args.g, sp)
    if args.L is not None:
        res = star_exact(f, g, args.L)
        text = format_ring(res)
        report = Report("star", "exact", {"space": sp.name, "N": sp.N, "L": args.L}, witness={"f": args.f, "g": args.g})
        payload = {"report": report.to_dict(), "result": ring_to_json(res)}
    else:
        K = args.order
        left = star_trunc(f, g, K)
        right = star_trunc_right(f, g, K)
        agree = left == right
        text = str(left)
        report = Report(
            "star",
            "trunc",
            {"space": sp.name, "N": sp.N, "K": K},
            status="pass" if agree else "fail",
            witness={"f": args.f, "g": args.g, "left_equals_right_operator": agree},
        )
        payload = {"report": report.to_dict(), "result": {str(n): ring_to_json(c) for n, c in enumerate(left.coeffs)}}
    print(text)
    if args.json:
        _emit(payload)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


def _dims(text: Optional[str]):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(",") if x.strip())


def cmd_verify(args) -> int:
    spaces = ("cpn", "chn") if args.space == "both" else (args.space,)
    cfg = SuiteConfig(
        spaces=spaces,
        dims=_dims(args.dim),
        order=args.order,
        L=args.L,
        seed=args.seed,
        count=args.count,
    )
    reports = run_suite(args.suite, cfg)
    text = dumps(reports, args.suite, timing=args.timing)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if not args.quiet:
        for r in reports:
            print(r.line(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# expand


def cmd_expand(args) -> int:
    K = args.order
    if args.what in ("alpha", "beta", "c"):
        if args.m is None or args.m < 0:
            raise CLIError("--m must be a nonnegative integer")
        s = 1 if args.space == "cpn" else -1
        if args.what == "alpha":
            val = alpha(args.m)
        elif args.what == "beta":
            val = beta(args.m)
        else:
            val = c_covariant(args.m, s)
        ser = expand_series(val, K)
        print(f"closed form: {val}")
        print(f"series: {_series_text(ser.coeffs)} + O(h^{K + 1})")
        return EXIT_OK
    if args.what == "hyp":
        p = HypParams(args.a, args.b, args.c0, args.c1, args.sign)
        print(f"{p} = {hyp_expand(p, K)} + O(h^{K + 1})")
        return EXIT_OK
    if args.what == "bordemann":
        F = bordemann_F(args.kind, K)
        T = bordemann_hyp_target(args.kind, K)
        print(f"F{args.kind} = {F} + O(h^{K + 1})")
        print(f"hypergeometric form agrees: {F == T}")
        return EXIT_OK if F == T else EXIT_FAIL
    raise CLIError(f"unknown expansion target {args.what!r}")


# ---------------------------------------------------------------------------
# fock


def _generator(text: str, side: str) -> Generator:
    kind, _, rest = text.partition("[")
    if not rest.endswith("]"):
        raise CLIError(f"generator must look like zb[1], got {text!r}")
    return Generator(kind, int(rest[:-1]), side)


def cmd_fock(args) -> int:
    if args.what == "matrix":
        g = _generator(args.gen, "left")
        mat = matrix_rep(args.L, args.dim)[g]
        _emit({"generator": str(g), "N": args.dim, "L": args.L, "matrix": [[str(x) for x in row] for row in mat]})
        return EXIT_OK
    if args.what == "table":
        sp = _space(args)
        h0 = None if args.L is None else Fraction(1, args.L)
        data = cache_mod.get_table(sp, args.max_size, h0, normalized=not args.unnormalized)
        _emit(data)
        return EXIT_OK
    if args.what == "ladder":
        sp = _space(args)
        g = _generator(args.gen, args.side)
        vec = ladder_apply(g, FockVector.basis(sp, FockIndex.parse(args.label)))
        _emit({"generator": str(g), "label": args.label, "result": {k.key(): str(v) for k, v in vec.sorted_terms()}})
        return EXIT_OK
    raise CLIError(f"unknown fock target {args.what!r}")


# ---------------------------------------------------------------------------
# cache


def cmd_cache(args) -> int:
    if args.action == "path":
        print(cache_mod.cache_dir())
    elif args.action == "list":
        _emit({"dir": str(cache_mod.cache_dir()), "files": cache_mod.list_entries()})
    elif args.action == "clear":
        print(f"removed {cache_mod.clear()} file(s)")
    elif args.action == "build":
        sp = _space(args)
        h0 = None if args.L is None else Fraction(1, args.L)
        data = cache_mod.get_table(sp, args.max_size, h0, normalized=not args.unnormalized)
        print(f"{cache_mod.cache_path(sp, args.max_size, h0, not args.unnormalized)}: {len(data['table'])} entries")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kahlerstar", description="Exact star products on CP^N and CH^N.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", help="star product of two expressions")
    s.add_argument("--space", choices=("cpn", "chn"), default="cpn")
    s.add_argument("--dim", type=int, default=1)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--order", type=int, default=None, help="truncation order K (formal h)")
    mode.add_argument("--L", type=int, default=None, help="exact mode at h = 1/L (CP^N only)")
    s.add_argument("--json", action="store_true", help="also print a JSON report")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_star)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}, all")
    v.add_argument("--space", choices=("cpn", "chn", "both"), default="both")
    v.add_argument("--dim", default=None, help="complex dimension(s), e.g. 2 or 1,2")
    v.add_argument("--order", type=int, default=None)
    v.add_argument("--L", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=20, help="random triples for associativity")
    v.add_argument("--out", default=None)
    v.add_argument("--timing", action="store_true", help="include timings (breaks byte-identical output)")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", help="closed forms and series of scalar coefficients")
    e.add_argument("--what", choices=("alpha", "beta", "c", "hyp", "bordemann"), required=True)
    e.add_argument("--m", type=int, default=None)
    e.add_argument("--order", type=int, default=6)
    e.add_argument("--space", choices=("cpn", "chn"), default="cpn")
    e.add_argument("--kind", type=int, choices=(1, 2), default=1)
    e.add_argument("--a", type=int, default=1)
    e.add_argument("--b", type=int, default=1)
    e.add_argument("--c0", type=int, default=1)
    e.add_argument("--c1", type=int, default=-1)
    e.add_argument("--sign", type=int, choices=(1, -1), default=-1)
    e.set_defaults(func=cmd_expand)

    f = sub.add_parser("fock", help="Fock-space tables, matrices and ladder actions")
    f.add_argument("--what", choices=("table", "matrix", "ladder"), required=True)
    f.add_argument("--space", choices=("cpn", "chn"), default="cpn")
    f.add_argument("--dim", type=int, default=1)
    f.add_argument("--L", type=int, default=None)
    f.add_argument("--max-size", type=int, default=2)
    f.add_argument("--unnormalized", action="store_true")
    f.add_argument("--gen", default="z[1]")
    f.add_argument("--side", choices=("left", "right"), default="left")
    f.add_argument("--label", default=";")
    f.set_defaults(func=cmd_fock)

    c = sub.add_parser("cache", help="manage the structure-constant cache")
    c.add_argument("action", choices=("path", "list", "clear", "build"))
    c.add_argument("--space", choices=("cpn", "chn"), default="cpn")
    c.add_argument("--dim", type=int, default=1)
    c.add_argument("--L", type=int, default=None)
    c.add_argument("--max-size", type=int, default=2)
    c.add_argument("--unnormalized", action="store_true")
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "star" and args.order is None and args.L is None:
        args.order = 2
    if args.command == "fock" and args.what == "matrix" and args.L is None:
        parser.error("fock --what matrix needs --L")
    try:
        return args.func(args)
    except (CLIError, ExprSyntaxError, UnknownSuiteError, PoleError, ValueError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
