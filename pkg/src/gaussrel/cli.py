"""Command-line interface: ``gaussrel {constants,curve,validate,simulate,spectrum}``.

Exit codes: 0 success, 1 usage or input error, 2 validation failure,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import List, Optional

import numpy as np

from ._optim import ConvergenceError
from .bounds import lower_bound, upper_bound_t1, upper_bound_t2
from .codes import (
    KINDS,
    gen_code,
    ml_decode_error_mc,
    pair_rho_for_distance,
    q_func,
    spectrum_histogram,
    union_bound,
)
from .core import capacity, e_sp, thresholds
from .svgplot import render
from .validation import run_suite

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NONCONVERGENCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """12 significant digits, locale independent; non-finite values as nan/inf."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _csv_text(header: List[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _snr(args) -> float:
    a = args.snr
    if not (math.isfinite(a) and a > 0):
        raise UsageError(f"--snr must be positive and finite, got {a}")
    return a


# --- subcommands ----------------------------------------------------------------

CONSTANT_ORDER = ["capacity", "r_crit", "r_bar1", "r_bar2", "tau_bar2", "r_bar3", "r_low", "a0",
                  "a_const", "tau_bar1", "t_bar1", "t_bar2"]


def cmd_constants(args) -> int:
    th = thresholds(_snr(args)).as_dict()
    if args.format == "json":
        _emit(json.dumps({k: th[k] for k in ["a"] + CONSTANT_ORDER}, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(_csv_text(["name", "value"], [(k, th[k]) for k in ["a"] + CONSTANT_ORDER]), args.out)
    else:
        width = max(map(len, CONSTANT_ORDER))
        lines = [f"{'A':<{width}s}  {fmt(th['a'])}"] + [f"{k:<{width}s}  {fmt(th[k])}" for k in CONSTANT_ORDER]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def curve_table(a: float, rmin: float, rmax: Optional[float], points: int):
    c = capacity(a)
    rmax = c if rmax is None else rmax
    if points < 2:
        raise UsageError("--rpoints must be at least 2")
    if not 0 <= rmin < rmax <= c * (1 + 1e-12):
        raise UsageError(f"need 0 <= rmin < rmax <= C = {c:.12g}")
    rates = np.linspace(rmin, min(rmax, c), points)
    rows = []
    for r in rates:
        r = float(r)
        rows.append((r, upper_bound_t1(r, a), upper_bound_t2(r, a), lower_bound(r, a), e_sp(r, a) if r > 0 else math.nan))
    return rows


def cmd_curve(args) -> int:
    a = _snr(args)
    rows = curve_table(a, args.rmin, args.rmax, args.rpoints)
    header = ["R", "upper_t1", "upper_t2", "lower", "e_sp"]
    if args.format == "csv":
        _emit(_csv_text(header, rows), args.out)
    elif args.format == "json":
        cols = {h: [None if (isinstance(v, float) and math.isnan(v)) else v for v in col] for h, col in zip(header, zip(*rows))}
        _emit(json.dumps({"a": a, **cols}, indent=1) + "\n", args.out)
    else:
        th = thresholds(a)
        markers = [("R1bar", th.r_bar1), ("Rcrit", th.r_crit), ("C", th.capacity)]
        if a > th.a0:
            markers = [("R2bar", th.r_bar2), ("R3bar", th.r_bar3)] + markers
        x = [row[0] for row in rows]
        series = {h: [row[i] for row in rows] for i, h in enumerate(header) if i}
        _emit(render(x, series, markers, f"Reliability function bounds, A = {a:g}"), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    rep = run_suite(perturb=args.perturb)
    _emit("\n".join(rep.lines()) + f"\n{'ALL PASS' if rep.passed else 'FAILURES'}\n", args.out)
    return EXIT_OK if rep.passed else EXIT_VALIDATION


def _parse_list(text: Optional[str]) -> List[float]:
    if text is None:
        return []
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def cmd_simulate(args) -> int:
    a = _snr(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    header = ["kind", "n", "M", "rho", "d", "trials", "errors", "p_e_hat", "half_width", "oracle"]
    rows = []
    if args.kind == "pair":
        ds = _parse_list(args.d)
        rhos = [pair_rho_for_distance(d, a) for d in ds] if ds else ([args.rho] if args.rho is not None else [])
        if not rhos:
            raise UsageError("pair needs --d or --rho")
        for rho in rhos:
            code = gen_code("pair", args.n, 2, a, rho=rho)
            est = ml_decode_error_mc(code, args.trials, args.seed)
            d = 2.0 * a * (1.0 - rho)
            rows.append(("pair", args.n, 2, rho, d, est.trials, est.errors, est.p_e_hat, est.half_width,
                         q_func(math.sqrt(d * args.n) / 2.0)))
    else:
        code = gen_code(args.kind, args.n, args.M, a, seed=args.seed)
        est = ml_decode_error_mc(code, args.trials, args.seed)
        rows.append((args.kind, args.n, code.M, None, None, est.trials, est.errors, est.p_e_hat, est.half_width,
                     union_bound(code)))
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    a = _snr(args)
    code = gen_code(args.kind, args.n, args.M, a, seed=args.seed, rho=args.rho)
    hist = spectrum_histogram(code, args.width)
    rows = []
    for k, (cnt, b) in enumerate(zip(hist.counts, hist.exponents())):
        if cnt or args.all_bins:
            rows.append((hist.edges[k], hist.edges[k + 1], int(cnt), cnt / hist.M, b))
    _emit(_csv_text(["rho_lo", "rho_hi", "pairs", "mass", "exponent"], rows), args.out)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussrel", description="Reliability-function bounds for the Gaussian channel.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_choices=("csv", "svg", "json"), default_fmt="csv"):
        p.add_argument("--snr", type=float, default=4.0, help="signal power per dimension A (default 4)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=fmt_choices, default=default_fmt)

    p = sub.add_parser("constants", help="thresholds and constants for one A")
    common(p, ("text", "json", "csv"), "text")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("curve", help="tabulate or plot the exponent bounds")
    common(p)
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=None, help="default: capacity")
    p.add_argument("--rpoints", type=int, default=200)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("validate", help="run the identity suite")
    p.add_argument("--perturb", type=float, default=0.0, help="shift tau_bar1 and t_bar1 (negative control)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in (("simulate", cmd_simulate, "Monte Carlo ML decoding error"),
                                 ("spectrum", cmd_spectrum, "inner-product spectrum of a code")):
        p = sub.add_parser(name, help=helptext)
        common(p, ("csv",))
        p.add_argument("--kind", choices=KINDS, default="pair")
        p.add_argument("--n", type=int, default=16)
        p.add_argument("--M", type=int, default=None)
        p.add_argument("--rho", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
    sim = sub.choices["simulate"]
    sim.add_argument("--trials", type=int, default=100000)
    sim.add_argument("--d", default=None, help="comma-separated squared distances per dimension (pair)")
    spec = sub.choices["spectrum"]
    spec.add_argument("--width", type=float, default=None, help="bin width (default 1/sqrt(A n))")
    spec.add_argument("--all-bins", action="store_true", help="also list empty bins")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"gaussrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"gaussrel: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
