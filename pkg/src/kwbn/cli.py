"""Command-line interface: ``kwbn {euler,table,verify,decompose,presentation}``.

Exit codes: 0 on success, 1 on invalid input, 2 when a verification suite
reports a failed identity.  Warnings do not change the exit code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .euler import alpha_row, beta_row, euler_class
from .ring import DEFAULT_CAP
from .presentations import bgl_presentation, bsl_presentation
from .reps import ExpressionError, IrrepLabel, decompose, parse_expression
from .verify import SUITES, run_suite

CAP_ENV = "KWBN_DEFAULT_CAP"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise UsageError(f"{CAP_ENV} must be non-negative")
    return cap


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _frac(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------


def cmd_euler(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    if cap < 2 * args.m + 2:
        raise UsageError(f"cap {cap} is too small for m = {args.m}; need at least {2 * args.m + 2}")
    sign = 1 if args.sign in ("+", "plus") else -1
    x = euler_class(IrrepLabel.two_dim(args.m, sign), cap)
    if args.format == "json":
        print(_dump(x.to_json()))
    elif args.format == "latex":
        print(x.to_latex())
    else:
        print(x.to_text())
    return 0


def _table_rows(kind: str, rows: int):
    if kind == "alpha":
        return [(n, alpha_row(n)) for n in range(rows)]
    return [(n, beta_row(n)) for n in range(1, rows + 1)]


def cmd_table(args) -> int:
    if args.rows < 1:
        raise UsageError("--rows must be at least 1")
    data = _table_rows(args.kind, args.rows)
    width = max(len(r) for _, r in data)
    if args.format == "json":
        print(_dump({"kind": args.kind, "rows": [{"n": n, "values": list(r)} for n, r in data]}))
    elif args.format == "latex":
        sym = r"\alpha" if args.kind == "alpha" else r"\beta"
        lines = [r"\begin{array}{r|" + "c" * width + "}",
                 f"n \\backslash k ({sym}) & " + " & ".join(str(k) for k in range(width)) + r" \\ \hline"]
        for n, r in data:
            cells = [str(v) for v in r] + [""] * (width - len(r))
            lines.append(f"{n} & " + " & ".join(cells) + r" \\")
        lines.append(r"\end{array}")
        print("\n".join(lines))
    else:
        cell = max(len(str(v)) for _, r in data for v in r) + 1
        print("n\\k".rjust(4) + "".join(str(k).rjust(cell) for k in range(width)))
        for n, r in data:
            print(str(n).rjust(4) + "".join(str(v).rjust(cell) for v in r))
    return 0


def cmd_verify(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    if args.max_m < 1:
        raise UsageError("--max-m must be at least 1")
    results = run_suite(args.suite, args.max_m, cap)
    failed = [r for r in results if r.status == "fail"]
    if args.format == "json":
        print(_dump({"suite": args.suite, "results": [r.to_json() for r in results],
                     "failed": len(failed)}))
    else:
        for r in results:
            print(r.line())
        warned = sum(r.status == "warn" for r in results)
        print(f"{len(results)} checks, {len(failed)} failed, {warned} warnings")
    return 2 if failed else 0


def cmd_decompose(args) -> int:
    try:
        rep = parse_expression(args.expr)
    except ExpressionError as exc:
        raise UsageError(f"cannot parse {args.expr!r}: {exc}") from None
    d = decompose(rep)
    if args.format == "json":
        print(_dump({
            "expr": args.expr,
            "dim": rep.dim,
            "summands": [
                {"label": str(s), "kind": s.kind, "m": s.m, "sign": s.sign,
                 "basis": [[_frac(c) for c in vec] for vec in basis]}
                for s, basis in zip(d.summands, d.bases)
            ],
        }))
    else:
        parts = []
        for label, k in d.multiplicities().items():
            parts.append(str(label) if k == 1 else f"{label}×{k}")
        print("{" + ", ".join(parts) + "}")
    return 0


def cmd_presentation(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.group == "BSL":
        parts = {"ring": bsl_presentation(args.n, cap)}
    else:
        untwisted, twisted = bgl_presentation(args.n, cap)
        parts = {"untwisted": untwisted, "twisted": twisted}
    if args.format == "latex":
        for key, p in parts.items():
            print(f"{key}: {p.to_latex()}")
    else:
        print(_dump({"group": args.group, "n": args.n,
                     "parts": {k: p.to_json() for k, p in parts.items()}}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kwbn", description="KW-Euler and Borel classes on BN")
    parser.add_argument("--version", action="version", version=f"kwbn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("euler", help="Euler class of O±(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sign", choices=["+", "-", "plus", "minus"], default="+")
    p.add_argument("--cap", type=int)
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("table", help="alpha/beta coefficient triangle")
    p.add_argument("--kind", choices=["alpha", "beta"], required=True)
    p.add_argument("--rows", type=int, default=7)
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--max-m", type=int, default=25)
    p.add_argument("--cap", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="decompose an N-representation")
    p.add_argument("--expr", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("presentation", help="ring presentation for BSL_n / BGL_n")
    p.add_argument("--group", choices=["BSL", "BGL"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--format", choices=["json", "latex"], default="json")
    p.set_defaults(func=cmd_presentation)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"kwbn: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
