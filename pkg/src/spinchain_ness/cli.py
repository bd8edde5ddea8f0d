"""Command-line front end for sweeps, presets, and unit conversion.

Exit codes: 0 on success, 1 on usage errors, 2 when every sweep point
failed in the solver.  Per-point solver failures are recorded in the CSV
error column and do not abort the run.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InvalidParameterError
from .model import ModelParams
from .sweep import (
    SweepSpec,
    preset_description,
    preset_names,
    run_preset,
    run_sweep,
    sweep_range,
    write_csv,
)
from .units import UnitConversion, convert_units

USAGE_ERROR = 1
SOLVER_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR) from None


def _glue_dash_values(argv):
    """Let --values/--range take arguments that start with a minus sign."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("--values", "--range") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def _parse_values(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse --values {text!r}: {exc}") from None


def _parse_range(text):
    parts = text.split(":")
    log = False
    if len(parts) == 4:
        if parts[3] != "log":
            raise InvalidParameterError(f"range spacing must be 'log', got {parts[3]!r}")
        log = True
        parts = parts[:3]
    if len(parts) != 3:
        raise InvalidParameterError(f"--range must be start:stop:count[:log], got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse --range {text!r}: {exc}") from None
    return sweep_range(start, stop, count, log=log)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="spinchain-ness",
        description=(
            "Steady-state spin transport in the boundary-driven isotropic Heisenberg "
            "chain: parameter sweeps, bundled figure presets, and physical-unit reports."
        ),
    )
    parser.add_argument("--axis", choices=("h", "gamma", "N", "theta", "f"), help="swept parameter")
    parser.add_argument("--values", help="explicit comma-separated sweep values")
    parser.add_argument("--range", dest="range_spec", help="start:stop:count[:log] sweep grid")
    parser.add_argument("--N", type=int, default=100, help="chain length (default 100)")
    parser.add_argument("--h", type=float, default=0.0, help="boundary field (default 0)")
    parser.add_argument("--gamma", type=float, default=1.0, help="bath rate (default 1)")
    parser.add_argument("--theta", type=float, default=0.0, help="twisting angle (default 0)")
    parser.add_argument("--f", type=float, default=1.0, help="bath polarization (default 1)")
    parser.add_argument("--engine", choices=("mps", "ed", "both"), default="mps")
    parser.add_argument("--observable", choices=("current", "density", "approx"), default="current")
    parser.add_argument("--preset", help=f"named preset: {', '.join(preset_names())}")
    parser.add_argument("--out", help="output CSV path (default stdout)")
    parser.add_argument("--plot", help="also render the result to this image file")
    parser.add_argument("--tol", type=float, default=1e-10, help="steady-state solver tolerance")
    parser.add_argument("--units", action="store_true", help="print a physical-unit report and exit")
    parser.add_argument(
        "--exchange-constant",
        type=float,
        default=1e-22,
        help="exchange constant in joules for --units (default 1e-22)",
    )
    parser.add_argument("--list-presets", action="store_true", help="list presets and exit")
    return parser


def _units_report(args, out):
    params = ModelParams(N=args.N, h=args.h, gamma=args.gamma, theta=args.theta, f=args.f)
    report = convert_units(params, UnitConversion(exchange_joules=args.exchange_constant))
    for key, value in report.items():
        out.write(f"{key} = {value:.6g}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_dash_values(sys.argv[1:] if argv is None else list(argv)))
    out_stream = sys.stdout

    try:
        if args.list_presets:
            for name in preset_names():
                out_stream.write(f"{name}: {preset_description(name)}\n")
            return 0

        if args.units:
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    _units_report(args, fh)
            else:
                _units_report(args, out_stream)
            return 0

        if args.preset:
            if args.axis or args.values or args.range_spec:
                raise InvalidParameterError("--preset cannot be combined with --axis/--values/--range")
            result = run_preset(args.preset)
        else:
            if not args.axis:
                raise InvalidParameterError("need --axis (with --values or --range), --preset, or --units")
            if bool(args.values) == bool(args.range_spec):
                raise InvalidParameterError("provide exactly one of --values or --range")
            values = _parse_values(args.values) if args.values else _parse_range(args.range_spec)
            base = ModelParams(N=args.N, h=args.h, gamma=args.gamma, theta=args.theta, f=args.f)
            spec = SweepSpec(
                axis=args.axis,
                values=values,
                base=base,
                engine=args.engine,
                observable=args.observable,
                tol=args.tol,
            )
            result = run_sweep(spec)
    except InvalidParameterError as exc:
        sys.stderr.write(f"spinchain-ness: error: {exc}\n")
        return USAGE_ERROR

    if args.out:
        write_csv(result, args.out)
    else:
        write_csv(result, out_stream)

    if args.plot:
        from .plotting import render_sweep

        try:
            render_sweep(result, args.plot, title=args.preset or "")
        except InvalidParameterError as exc:
            sys.stderr.write(f"spinchain-ness: plot skipped: {exc}\n")

    if all(row["error"] for row in result.rows):
        sys.stderr.write("spinchain-ness: every sweep point failed; see the error column\n")
        return SOLVER_ERROR
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
