"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 bad arguments, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict
from typing import Optional, Sequence

from . import bound, model, observables, scan, scatter, verify, zeromode
from .errors import (
    BesselOverflowError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    HypershellError,
    QuadratureError,
)
from .model import PotentialParams

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_ARGS = 2
EXIT_NUMERIC = 3

log = logging.getLogger("hypershell")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _ArgumentError(message)


class _ArgumentError(Exception):
    pass


def _fmt(value) -> str:
    return scan.format_value(value)


def _params(args) -> PotentialParams:
    return PotentialParams(args.d, args.w0, args.w1, args.x0)


def _add_couplings(sp, w0=True):
    sp.add_argument("--d", type=int, required=True, help="spatial dimension (>= 2)")
    if w0:
        sp.add_argument("--w0", type=float, required=True, help="delta coupling")
    sp.add_argument("--w1", type=float, required=True, help="delta' coupling")
    sp.add_argument("--x0", type=float, required=True, help="shell radius")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypershell", description="Spectra of the hyperspherical delta-delta' shell.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("spectrum", help="bound states channel by channel")
    _add_couplings(sp)
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")

    sp = sub.add_parser("phase-shift", help="phase shift curve over a k range")
    _add_couplings(sp)
    sp.add_argument("--l", type=int, required=True, help="angular momentum")
    sp.add_argument("--k", required=True, help="START:STOP:STEP (inclusive)")
    sp.add_argument("--unwrap", action="store_true", help="remove jumps of pi along k")

    sp = sub.add_parser("zero-mode", help="w0 on the zero-mode surface")
    _add_couplings(sp, w0=False)
    sp.add_argument("--l", type=int, required=True)

    sp = sub.add_parser("mean-radius", help="<x>/x0 of one channel's bound state")
    _add_couplings(sp)
    sp.add_argument("--l", type=int, required=True)

    sp = sub.add_parser("scan", help="one- or two-parameter sweep as CSV")
    sp.add_argument("--quantity", choices=[q.value for q in scan.Quantity], required=True)
    sp.add_argument(
        "--sweep", action="append", required=True, metavar="NAME=START:STOP:STEP",
        help="swept parameter (w0, w1, x0 or k); give at most twice",
    )
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--l", type=int, default=0)
    for name in ("w0", "w1", "x0", "k"):
        sp.add_argument(f"--{name}", type=float, default=None)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    sp = sub.add_parser("verify", help="cross-check against the ODE oracle")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def _spectrum(args, out) -> int:
    sp = bound.spectrum(_params(args))
    rows, running = [], 0
    for s in sp.states:
        running += s.degeneracy
        rows.append((s.ell, s.kappa, s.lam, s.degeneracy, running))
    if args.format == "json":
        record = {
            "params": asdict(sp.params),
            "l_max": sp.l_max.value,
            "total_count": sp.total_count,
            "zero_mode_channel": sp.zero_mode_channel,
            "states": [asdict(s) for s in sp.states],
        }
        out.write(json.dumps(record, indent=2) + "\n")
    elif args.format == "csv":
        out.write(f"# params: d={args.d} w0={_fmt(args.w0)} w1={_fmt(args.w1)} x0={_fmt(args.x0)}\n")
        out.write("ell,kappa,lambda,deg,N\n")
        for r in rows:
            out.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in r) + "\n")
    else:
        out.write(f"{'ell':>4} {'kappa':>22} {'lambda':>22} {'deg':>6} {'N':>7}\n")
        for ell, kappa, lam, deg, n in rows:
            out.write(f"{ell:>4} {kappa:>22.15g} {lam:>22.15g} {deg:>6} {n:>7}\n")
        out.write(f"N = {sp.total_count}\n")
    return EXIT_OK


def _phase_shift(args, out) -> int:
    p = _params(args)
    ks = scan.range_values(args.k)
    deltas = [scatter.phase_shift_value(p, args.l, k) for k in ks]
    if args.unwrap:
        deltas = list(scatter.unwrap(deltas))
    out.write(f"# params: d={args.d} l={args.l} w0={_fmt(args.w0)} w1={_fmt(args.w1)} x0={_fmt(args.x0)}\n")
    out.write("k,delta,re_s,im_s\n")
    for k, delta in zip(ks, deltas):
        s = scatter.s_matrix_eigenvalue(delta)
        out.write(f"{_fmt(k)},{_fmt(delta)},{_fmt(s.real)},{_fmt(s.imag)}\n")
    return EXIT_OK


def _zero_mode(args, out) -> int:
    eta = model.eta(args.d, args.l)
    if eta > 0:
        out.write(f"none (eta={eta}>0)\n")
        return EXIT_OK
    out.write(_fmt(zeromode.zero_mode_w0(args.d, args.l, args.w1, args.x0)) + "\n")
    return EXIT_OK


def _mean_radius(args, out) -> int:
    value = scan.evaluate_cell(
        scan.Quantity.MEAN_RADIUS_RATIO,
        {"d": args.d, "l": args.l, "w0": args.w0, "w1": args.w1, "x0": args.x0},
    )
    if value == scan.FAIL:
        raise ConvergenceError("mean-radius evaluation failed")
    out.write(_fmt(value) + "\n")
    return EXIT_OK


def _scan(args, out) -> int:
    axes = []
    for item in args.sweep:
        name, sep, rng = item.partition("=")
        if not sep:
            raise DomainError(f"--sweep expects NAME=START:STOP:STEP, got {item!r}")
        axes.append(scan.Axis(name, *scan.parse_range(rng)))
    if len(axes) > 2:
        raise DomainError("at most two --sweep options")
    fixed = {"d": args.d, "l": args.l}
    swept = {a.name for a in axes}
    for name in ("w0", "w1", "x0", "k"):
        value = getattr(args, name)
        if value is not None and name not in swept:
            fixed[name] = value
    grid = scan.run_scan(scan.Quantity(args.quantity), axes, fixed, jobs=args.jobs)
    scan.write_csv(grid, out)
    failed = sum(1 for c in grid.cells if c == scan.FAIL)
    if failed:
        log.error("%d cell(s) failed to converge", failed)
        return EXIT_NUMERIC
    return EXIT_OK


def _verify(args, out) -> int:
    ok = True
    for result in verify.run_checks(args.trials, args.seed):
        out.write(result.line() + "\n")
        out.flush()
        ok &= result.passed
    return EXIT_OK if ok else EXIT_VERIFY


_COMMANDS = {
    "spectrum": _spectrum,
    "phase-shift": _phase_shift,
    "zero-mode": _zero_mode,
    "mean-radius": _mean_radius,
    "scan": _scan,
    "verify": _verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"hypershell: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return _COMMANDS[args.command](args, out)
    except (ConvergenceError, QuadratureError, EvaluationError, BesselOverflowError) as exc:
        print(f"hypershell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, ValueError, HypershellError) as exc:
        print(f"hypershell: error: {exc}", file=sys.stderr)
        return EXIT_ARGS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
