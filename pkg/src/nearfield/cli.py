"""Command-line front end.

Subcommands: ``beam-sweep`` (near/far normalized power along a sweep),
``schedule`` (SIR-constrained user selection plus power profiles), and
``fraunhofer`` (near/far boundary diagnostic). Results go to CSV or JSON;
``--plot`` additionally renders a PNG next to the output file.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, DomainError
from .figures import figure_path, render
from .reports import to_csv, to_json, write_text
from .scenario import parse_config, scenario_from_mappings
from .sweeps import ANGLE_AXIS, SweepSpec, Z_AXIS, beam_sweep, fraunhofer_report, schedule_run

_SCENARIO_FLAGS = (
    "frequency_hz",
    "nx",
    "ny",
    "element_side_over_lambda",
    "spacing_over_lambda",
    "model",
    "quadrature_order",
)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    scn = common.add_argument_group("scenario", "override config-file and default values")
    scn.add_argument("--config", type=Path, help="flat 'key = value' scenario file")
    scn.add_argument("--frequency-hz", type=float, help="carrier frequency [Hz]")
    scn.add_argument("--nx", type=int, help="elements along X")
    scn.add_argument("--ny", type=int, help="elements along Y")
    scn.add_argument("--element-side-over-lambda", type=float, help="patch side as a fraction of the wavelength")
    scn.add_argument("--spacing-over-lambda", type=float, help="grid spacing as a fraction of the wavelength")
    scn.add_argument("--model", choices=["exact", "near", "far"], help="propagation model")
    scn.add_argument("--quadrature-order", type=int, help="Gauss-Legendre order per patch axis (exact model)")
    out = common.add_argument_group("output")
    out.add_argument("--out", type=Path, help="output file (default: stdout)")
    out.add_argument("--format", choices=["csv", "json"], help="output format (default depends on the subcommand)")
    out.add_argument("--plot", action="store_true", help="render a PNG figure next to --out")
    return common


def _scenario(args):
    file_values = parse_config(args.config) if args.config else {}
    flag_values = {name: getattr(args, name) for name in _SCENARIO_FLAGS}
    return scenario_from_mappings(file_values, flag_values)


def _parse_focus(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"focus must be 'x,y,z' in meters, got {text!r}")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"focus must be numeric 'x,y,z', got {text!r}") from None
    return (x, y, z)


def _emit(record: dict, args, default_format: str) -> None:
    fmt = args.format or default_format
    if args.plot and args.out is None:
        raise ConfigError("--plot requires --out")
    if fmt == "csv" and record["schema"].endswith("schedule/1"):
        if args.out is None:
            raise ConfigError("schedule --format csv requires --out")
        write_text(to_csv(record), args.out)
        sidecar = args.out.with_suffix(".json")
        if sidecar == args.out:
            sidecar = args.out.with_name(args.out.stem + ".record.json")
        write_text(to_json(record), sidecar)
    else:
        write_text(to_csv(record) if fmt == "csv" else to_json(record), args.out)
    if args.plot:
        render(record, figure_path(args.out))


def _cmd_beam_sweep(args) -> int:
    scenario = _scenario(args)
    spec = SweepSpec(args.axis, args.start, args.stop, args.count, _parse_focus(args.focus))
    _emit(beam_sweep(scenario, spec), args, default_format="csv")
    return 0


def _cmd_schedule(args) -> int:
    scenario = _scenario(args)
    record = schedule_run(scenario, args.users, args.d_min, args.d_max, args.gamma_db, args.profile_points)
    _emit(record, args, default_format="json")
    return 0


def _cmd_fraunhofer(args) -> int:
    scenario = _scenario(args)
    _emit(fraunhofer_report(scenario), args, default_format="json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearfield",
        description="LOS wireless channel models from the dyadic Green's function: "
        "beam-power maps and SIR-constrained user scheduling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    sweep = sub.add_parser(
        "beam-sweep",
        parents=[common],
        help="near/far normalized power along a Z-axis or angular sweep",
    )
    sweep.add_argument("--axis", choices=[Z_AXIS, ANGLE_AXIS], default=Z_AXIS)
    sweep.add_argument("--start", type=float, default=0.01, help="first sweep value (m or deg)")
    sweep.add_argument("--stop", type=float, default=1.0, help="last sweep value (m or deg)")
    sweep.add_argument("--count", type=int, default=200, help="number of sweep points")
    sweep.add_argument("--focus", default="0,0,0.1", help="beam focus 'x,y,z' in meters")
    sweep.set_defaults(func=_cmd_beam_sweep)

    sched = sub.add_parser(
        "schedule",
        parents=[common],
        help="SIR-constrained selection of Z-axis users plus power profiles",
    )
    sched.add_argument("--users", type=int, default=100, help="number of candidate positions")
    sched.add_argument("--d-min", type=float, default=0.1, help="closest candidate distance [m]")
    sched.add_argument("--d-max", type=float, default=10.0, help="farthest candidate distance [m]")
    sched.add_argument("--gamma-db", type=float, default=18.0, help="minimum pairwise SIR [dB]")
    sched.add_argument("--profile-points", type=int, default=400, help="points per power profile")
    sched.set_defaults(func=_cmd_schedule)

    fraun = sub.add_parser(
        "fraunhofer",
        parents=[common],
        help="aperture diagonal, Fraunhofer distance, and near/far gaps",
    )
    fraun.set_defaults(func=_cmd_fraunhofer)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
