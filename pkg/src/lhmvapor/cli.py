"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import defaults
from .config import load_config, parse_config, render_config
from .csvio import emit_csv, parse_csv
from .errors import LhmError, NumericalError
from .master_equation import build_generator, steady_state
from .response import optical_response
from .selfcheck import run_all
from .svg import PLOTTABLE, emit_svg
from .sweep import (PREDICATES, SweepGrid, calibrate_dipoles, find_bands, group_index,
                    sweep_detuning)

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lhmvapor",
                     description="Four-level coherent vapor: steady state and optical response.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log applied defaults")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("steady", help="steady state and response at one detuning")
    p.add_argument("--config", metavar="F")
    p.add_argument("--delta-p", type=float, default=0.0, metavar="X")

    p = sub.add_parser("sweep", help="sweep the probe detuning and write a CSV table")
    p.add_argument("--config", metavar="F")
    p.add_argument("--out", required=True, metavar="T.csv")
    p.add_argument("--svg", metavar="P.svg")
    p.add_argument("--columns", default="re_eps,re_mu",
                   help=f"comma-separated SVG columns from {', '.join(PLOTTABLE)}")
    p.add_argument("--from", dest="from_delta", type=float, metavar="A")
    p.add_argument("--to", dest="to_delta", type=float, metavar="B")
    p.add_argument("--step", type=float, metavar="S")

    p = sub.add_parser("bands", help="detuning intervals where a predicate holds")
    p.add_argument("--in", dest="infile", required=True, metavar="T.csv")
    p.add_argument("--predicate", required=True, choices=sorted(PREDICATES), metavar="NAME")

    p = sub.add_parser("calibrate", help="rescale dipoles to the target |N gamma| windows")
    p.add_argument("--config", metavar="F")
    p.add_argument("--out", required=True, metavar="F2")
    p.add_argument("--target-e", nargs=2, type=float, metavar=("LO", "HI"),
                   default=defaults.TARGET_NGAMMA_E)
    p.add_argument("--target-m", nargs=2, type=float, metavar=("LO", "HI"),
                   default=defaults.TARGET_NGAMMA_M)

    sub.add_parser("selfcheck", help="run the embedded invariant suite")
    return parser


def grammar(parser) -> str:
    lines = [parser.format_usage().strip()]
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            lines.append("  " + sp.format_usage().strip().removeprefix("usage: "))
    return "\n".join(lines)


def _load(path):
    if path is None:
        return parse_config("")
    return load_config(path)


def _cfmt(v) -> str:
    v = complex(v)
    return f"{v.real:.17g} {v.imag:+.17g}j"


def cmd_steady(args):
    params, _ = _load(args.config)
    params = params.with_delta_p(args.delta_p)
    rho = steady_state(build_generator(params))
    resp = optical_response(rho, params)
    out = [f"delta_p = {params.delta_p!r}"]
    for j in range(4):
        for k in range(4):
            out.append(f"rho_{j + 1}{k + 1} = {_cfmt(rho[j, k])}")
    for name in ("gamma_e", "gamma_m", "chi_e", "eps_r", "mu_r", "n"):
        out.append(f"{name} = {_cfmt(getattr(resp, name))}")
    out.append(f"absorption_a = {float(resp.absorption_a):.17g}")
    print("\n".join(out))
    return EXIT_OK


def cmd_sweep(args):
    params, grid = _load(args.config)
    if any(v is not None for v in (args.from_delta, args.to_delta, args.step)):
        grid = SweepGrid(
            grid.from_delta if args.from_delta is None else args.from_delta,
            grid.to_delta if args.to_delta is None else args.to_delta,
            grid.step if args.step is None else args.step,
        )
    columns = [c for c in args.columns.split(",") if c]
    bad = [c for c in columns if c not in PLOTTABLE]
    if bad:
        raise UsageError(f"--columns: unknown column {bad[0]!r}")
    table = group_index(sweep_detuning(params, grid), params.omega_probe0, params.gamma_scale)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(emit_csv(table))
    if args.svg:
        emit_svg(table, columns, args.svg)
    flagged = sum(1 for r in table if r.flag)
    print(f"wrote {len(table)} rows to {args.out}" + (f" ({flagged} flagged)" if flagged else ""))
    return EXIT_OK


def cmd_bands(args):
    with open(args.infile, encoding="utf-8") as fh:
        table = parse_csv(fh.read())
    for band in find_bands(table, args.predicate):
        print(f"{band.lo:.12g} {band.hi:.12g}")
    return EXIT_OK


def cmd_calibrate(args):
    params, grid = _load(args.config)
    calibrated, audit = calibrate_dipoles(params, grid, tuple(args.target_e),
                                          tuple(args.target_m))
    header = (f"calibrated: d24 x {audit.factor_e!r}, mu23 x {audit.factor_m!r}\n"
              f"peak |N gamma_e| = {audit.peak_ngamma_e!r}, "
              f"peak |N gamma_m| = {audit.peak_ngamma_m!r}")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(render_config(calibrated, grid, header))
    print(header)
    return EXIT_OK


def cmd_selfcheck(args):
    results = run_all()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERICAL


COMMANDS = {"steady": cmd_steady, "sweep": cmd_sweep, "bands": cmd_bands,
            "calibrate": cmd_calibrate, "selfcheck": cmd_selfcheck}


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}\n\n{grammar(parser)}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (LhmError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
