"""Command-line front end: ``irc-gdof {gdof,sweep,bounds,achievable}``.

Exit codes: 0 success, 1 usage error, 2 domain or regime error.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from .bounds import bound_report
from .channel import LinearChannel, StrengthExponents
from .closed_form import gdof_ic, gdof_irc
from .errors import IRCError, RegimeError
from .fdf import best_sum_rate, example_allocation, weak_rates
from .slope import DEFAULT_LADDER, achievable_rate, converse_rate, estimate_slope

CSV_HEADER = "alpha,d_formula,d_ic,d_converse_numeric,d_fdf_numeric,argmin"
ALPHA_SPACING = 0.05
DEFAULT_ALPHA_MAX = 2.5

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    d_formula: float
    d_ic: float
    d_converse_numeric: float
    d_fdf_numeric: float
    argmin_index: int

    def csv_line(self) -> str:
        vals = (self.alpha, self.d_formula, self.d_ic, self.d_converse_numeric, self.d_fdf_numeric)
        # + 0.0 turns -0.0 into 0.0
        return ",".join(f"{v + 0.0:.6f}" for v in vals) + f",{self.argmin_index}"


def alpha_grid(alpha_min: float, alpha_max: float, steps: int) -> list[float]:
    return [float(a) for a in np.linspace(alpha_min, alpha_max, steps)]


def sweep_rows(
    beta: float,
    gamma: float,
    alphas,
    ladder=DEFAULT_LADDER,
    k_max: int = 4,
    resolution: int = 6,
) -> list[SweepRow]:
    alphas = list(alphas)
    if alphas and min(alphas) < gamma:
        raise RegimeError("regime gamma>alpha not characterized")
    rows = []
    for a in alphas:
        e = StrengthExponents(a, beta, gamma)
        bd = gdof_irc(e)
        conv = estimate_slope(converse_rate, e, ladder).final
        ach = estimate_slope(lambda ch: achievable_rate(ch, k_max, resolution), e, ladder).final
        rows.append(SweepRow(a, bd.value, gdof_ic(a), conv, ach, bd.argmin_index))
    return rows


def render_csv(rows) -> str:
    buf = io.StringIO(newline="")
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(r.csv_line() + "\n")
    return buf.getvalue()


def parse_ladder(text: str) -> tuple[float, ...]:
    """``"10,20,30"`` -> (1e10, 1e20, 1e30)."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        p = float(tok)
        out.append(float(f"1e{tok}") if p.is_integer() and "." not in tok else 10.0**p)
    return tuple(out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h-d", type=float, required=True, help="direct gain")
    p.add_argument("--h-c", type=float, required=True, help="cross (interference) gain")
    p.add_argument("--h-r", type=float, required=True, help="relay-to-receiver gain")
    p.add_argument("--h-sr", type=float, required=True, help="source-to-relay gain")
    p.add_argument("--power", "-P", type=float, required=True, help="per-node power budget")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="irc-gdof", description="GDoF and rate bounds of the symmetric interference relay channel")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gdof", help="closed-form GDoF with per-term breakdown")
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--beta", type=float, required=True)
    g.add_argument("--gamma", type=float, required=True)

    s = sub.add_parser("sweep", help="alpha sweep as CSV")
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--alpha-min", type=float, default=None, help="default: gamma")
    s.add_argument("--alpha-max", type=float, default=DEFAULT_ALPHA_MAX)
    s.add_argument("--steps", type=int, default=None, help=f"default: {ALPHA_SPACING} spacing")
    s.add_argument("--snr-ladder", default="10,20,30", help="comma-separated powers of ten")
    s.add_argument("--k-max", type=int, default=4)
    s.add_argument("--resolution", type=int, default=6)
    s.add_argument("--out", default=None, help="CSV path (default: stdout)")

    b = sub.add_parser("bounds", help="finite-SNR sum-capacity upper bounds")
    _add_channel_flags(b)

    a = sub.add_parser("achievable", help="FDF achievable sum-rate")
    _add_channel_flags(a)
    a.add_argument("--k-max", type=int, default=4)
    a.add_argument("--resolution", type=int, default=6)
    a.add_argument("--use-example-allocation", action="store_true",
                   help="evaluate the analytic allocation instead of searching")
    return ap


def _cmd_gdof(args) -> int:
    bd = gdof_irc(StrengthExponents(args.alpha, args.beta, args.gamma))
    for i, v in enumerate(bd.args, 1):
        print(f"arg{i} = {v:.6f}")
    print(f"d = {bd.value:.6f}")
    print(f"argmin = {bd.argmin_index}")
    return EXIT_OK


def _cmd_sweep(args, parser) -> int:
    alpha_min = args.gamma if args.alpha_min is None else args.alpha_min
    if args.alpha_max < alpha_min:
        parser.error("--alpha-max must not be below --alpha-min")
    steps = args.steps
    if steps is None:
        steps = int(round((args.alpha_max - alpha_min) / ALPHA_SPACING)) + 1
    if steps < 2:
        parser.error("--steps must be >= 2")
    if args.k_max < 1 or args.resolution < 2:
        parser.error("--k-max must be >= 1 and --resolution >= 2")
    try:
        ladder = parse_ladder(args.snr_ladder)
    except ValueError:
        parser.error(f"bad --snr-ladder {args.snr_ladder!r}")
    if alpha_min < args.gamma:
        raise RegimeError("regime gamma>alpha not characterized")

    rows = sweep_rows(args.beta, args.gamma, alpha_grid(alpha_min, args.alpha_max, steps),
                      ladder, args.k_max, args.resolution)
    text = render_csv(rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def _channel(args) -> LinearChannel:
    return LinearChannel(args.h_d, args.h_c, args.h_r, args.h_sr, args.power)


def _cmd_bounds(args) -> int:
    rep = bound_report(_channel(args))
    for name, v in rep.as_dict().items():
        print(f"{name:<10} = {v:.6f} bits")
    print(f"tightest   = {rep.tightest:.6f} bits ({rep.tightest_name})")
    return EXIT_OK


def _cmd_achievable(args, parser) -> int:
    if args.k_max < 1:
        parser.error("--k-max must be >= 1")
    if args.resolution < 2:
        parser.error("--resolution must be >= 2")
    ch = _channel(args)
    if args.use_example_allocation:
        alloc = example_allocation(ch)
        rb = weak_rates(ch, alloc)
    else:
        rb, alloc, _ = best_sum_rate(ch, args.k_max, args.resolution)
    print(f"variant = {rb.variant}")
    print(f"K = {alloc.K}")
    print(f"r_private = {rb.r_private:.6f}")
    print(f"r_common = {rb.r_common:.6f}")
    for k, r in enumerate(rb.r_cp_levels, 1):
        print(f"r_cp[{k}] = {r:.6f}")
    print(f"r_cp_total = {rb.r_cp_total:.6f}")
    print(f"sum_rate = {rb.sum_rate:.6f} bits")
    if ch.snr_d > 1:
        print(f"normalized = {rb.sum_rate / (0.5 * math.log2(ch.snr_d)):.6f}")
    for key, tag in rb.binding_constraints.items():
        print(f"binding {key} = {tag}")
    print(f"p_private = {alloc.p_private:.6g}")
    print(f"p_common = {alloc.p_common:.6g}")
    for k, p in enumerate(alloc.p_cp, 1):
        print(f"p_cp[{k}] = {p:.6g}")
    print(f"p_relay_1 = {alloc.p_relay_1:.6g}")
    print(f"p_relay_2 = {alloc.p_relay_2:.6g}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gdof":
            return _cmd_gdof(args)
        if args.command == "sweep":
            return _cmd_sweep(args, parser)
        if args.command == "bounds":
            return _cmd_bounds(args)
        return _cmd_achievable(args, parser)
    except IRCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
