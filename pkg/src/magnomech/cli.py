"""Command line front end: point | sweep | figure | peaks.

Exit codes: 0 success, 2 config error, 3 unstable, 4 non-convergence,
5 I/O error, 6 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import (
    ConfigError,
    InvalidSpec,
    IoError,
    MagnomechError,
    NonConvergence,
    ParseError,
    UnknownFigure,
    Unstable,
)
from .gaussian import entangle_with_margin, nonrecip_with_margin
from .io import (
    load_params_file,
    read_sweep_csv,
    spec_from_meta,
    write_meta_sidecar,
    write_sweep_csv,
    write_sweep_jsonl,
)
from .model import solve_steady_state
from .params import TWO_PI
from .sweep import (
    AXIS_FIELDS,
    DEFAULT_GRID_POINTS,
    FIGURE_IDS,
    Axis,
    SweepSpec,
    figure_preset,
    run_sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_NONCONVERGENCE = 4
EXIT_IO = 5
EXIT_PARSE = 6

# axis endpoints on the CLI are quoted in config units
_AXIS_UNITS = {
    "delta_n": "freq",
    "delta_m_eff": "freq",
    "delta_B": "freq",
    "chi": "freq",
    "coupling_G": "freq",
    "beta": "plain",
    "temperature": "plain",
}


def _parse_axis(text: str) -> Axis:
    """Parse 'name:start:stop:count'; frequency endpoints are /2pi Hz."""
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"axis must be name:start:stop:count, got {text!r}")
    name, start_s, stop_s, count_s = parts
    if name not in AXIS_FIELDS:
        raise ConfigError(f"unknown axis parameter {name!r}; valid: {', '.join(AXIS_FIELDS)}")
    try:
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise ConfigError(f"bad axis numbers in {text!r}") from None
    if _AXIS_UNITS[name] == "freq":
        start *= TWO_PI
        stop *= TWO_PI
    return Axis(name, start, stop, count)


def _write_result(result, out_path: str, fmt: str, command: str) -> None:
    if fmt == "csv":
        write_sweep_csv(result, out_path)
    else:
        write_sweep_jsonl(result, out_path)
    write_meta_sidecar(result, out_path, command)


def cmd_point(args) -> int:
    params = load_params_file(args.params, args.set)
    steady = solve_steady_state(params)
    report = {
        "steady_state": {
            "m_s": [steady.m_s.real, steady.m_s.imag],
            "n_s": [steady.n_s.real, steady.n_s.imag],
            "q_s": steady.q_s,
            "p_s": steady.p_s,
            "coupling_G_eff_abs": abs(steady.coupling_G_eff),
            "delta_m_eff": steady.delta_m_eff,
            "iterations": steady.iterations,
        }
    }
    result, margin = entangle_with_margin(params)
    report["stability_margin"] = margin
    report["negativities"] = {
        "e_nm": result.e_nm,
        "e_mb": result.e_mb,
        "e_nb": result.e_nb,
    }
    if args.nonrecip:
        contrast, pair_margin = nonrecip_with_margin(params, params.delta_B)
        report["nonreciprocity"] = {
            "delta_B_magnitude": abs(params.delta_B),
            "stability_margin": pair_margin,
            "n_nm": contrast.n_nm,
            "n_mb": contrast.n_mb,
            "n_nb": contrast.n_nb,
        }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.from_meta:
        spec, preset = spec_from_meta(args.from_meta)
    else:
        if not args.axis1:
            raise ConfigError("sweep requires --axis1 (or --from-meta)")
        base = load_params_file(args.params, args.set)
        quantities = tuple(args.quantities.split(",")) if args.quantities else None
        spec = SweepSpec(
            base=base,
            axis1=_parse_axis(args.axis1),
            axis2=_parse_axis(args.axis2) if args.axis2 else None,
            quantities=quantities
            if quantities is not None
            else (("n_nm", "n_mb", "n_nb") if args.nonrecip else ("e_nm", "e_mb", "e_nb")),
            nonrecip_pairing=args.nonrecip,
        )
        preset = None
    if not args.out:
        raise ConfigError("sweep requires --out")
    result = run_sweep(spec, workers=args.workers, preset=preset)
    _write_result(result, args.out, args.format, "sweep")
    return EXIT_OK


def cmd_figure(args) -> int:
    spec = figure_preset(args.id, points=args.points)
    if args.set:
        from .params import apply_dotted_overrides, params_from_config

        doc = apply_dotted_overrides({}, args.set)
        spec = SweepSpec(
            base=params_from_config(doc, base=spec.base),
            axis1=spec.axis1,
            axis2=spec.axis2,
            quantities=spec.quantities,
            nonrecip_pairing=spec.nonrecip_pairing,
        )
    out = args.out or f"{args.id}.csv"
    result = run_sweep(spec, workers=args.workers, preset=args.id)
    _write_result(result, out, args.format, "figure")
    return EXIT_OK


def cmd_peaks(args) -> int:
    header, rows = read_sweep_csv(args.input)
    axis1 = header[0]
    axis2 = header[1] if header[1] != "status" else None
    quantity_names = [
        name for name in header if name not in (axis1, axis2, "status", "stability_margin")
    ]
    if not quantity_names:
        raise ParseError(f"{args.input}: no quantity columns")

    groups = [(None, rows)]
    if axis2 is not None:
        keys = sorted({row[axis2] for row in rows})
        groups = [(key, [row for row in rows if row[axis2] == key]) for key in keys]

    report = []
    for group_key, group_rows in groups:
        for name in quantity_names:
            points = [
                (row[axis1], row[name]) for row in group_rows if row[name] is not None
            ]
            entry = {"quantity": name}
            if group_key is not None:
                entry[axis2] = group_key
            if not points:
                entry["empty"] = True
                report.append(entry)
                continue
            values = np.array([value for _, value in points])
            axis_values = np.array([axis for axis, _ in points])
            top = int(np.argmax(values))
            peak = values[top]
            above = axis_values[values >= 0.99 * peak]
            entry.update(
                {
                    "axis": axis1,
                    "argmax": float(axis_values[top]),
                    "max": float(peak),
                    "window_99pct": [float(above.min()), float(above.max())],
                }
            )
            report.append(entry)
    json.dump({"input": args.input, "peaks": report}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnomech",
        description="Steady-state entanglement and Barnett-shift nonreciprocity "
        "of a cavity magnomechanical system with an OPA",
    )
    parser.add_argument("--version", action="version", version=f"magnomech {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_out=True):
        p.add_argument("--params", help="JSON parameter file (baseline when omitted)")
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a config key (dotted names, config units), repeatable",
        )
        if with_out:
            p.add_argument("--out", help="output file path")
            p.add_argument(
                "--format", choices=("csv", "json-lines"), default="csv",
                help="output format (default csv)",
            )
        p.add_argument(
            "--workers", type=int, default=1, help="parallel worker processes (default 1)"
        )

    p_point = sub.add_parser("point", help="evaluate one parameter point")
    add_common(p_point, with_out=False)
    p_point.add_argument(
        "--nonrecip",
        action="store_true",
        help="also report contrast ratios at +-|delta_B|",
    )
    p_point.set_defaults(func=cmd_point)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter grid")
    add_common(p_sweep)
    p_sweep.add_argument(
        "--axis1", metavar="NAME:START:STOP:COUNT",
        help="swept parameter (frequency endpoints in /2pi Hz; beta rad; temperature K)",
    )
    p_sweep.add_argument("--axis2", metavar="NAME:START:STOP:COUNT", help="optional second axis")
    p_sweep.add_argument(
        "--quantities", help="comma-separated subset of e_nm,e_mb,e_nb,n_nm,n_mb,n_nb,stability_margin"
    )
    p_sweep.add_argument(
        "--nonrecip", action="store_true", help="pair each point at +-|delta_B|"
    )
    p_sweep.add_argument(
        "--from-meta", metavar="META_JSON",
        help="re-run the exact sweep recorded in a metadata sidecar",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_figure = sub.add_parser("figure", help="run a named figure preset")
    p_figure.add_argument("id", choices=FIGURE_IDS, metavar="ID",
                          help=f"one of {', '.join(FIGURE_IDS)}")
    add_common(p_figure)
    p_figure.add_argument(
        "--points", type=int, default=DEFAULT_GRID_POINTS,
        help="grid points on the swept axis (default 401)",
    )
    p_figure.set_defaults(func=cmd_figure)

    p_peaks = sub.add_parser("peaks", help="report per-quantity peaks of a sweep CSV")
    p_peaks.add_argument("input", help="CSV produced by sweep/figure")
    p_peaks.set_defaults(func=cmd_peaks)

    return parser


_EXIT_BY_ERROR = (
    (Unstable, EXIT_UNSTABLE),
    (NonConvergence, EXIT_NONCONVERGENCE),
    (IoError, EXIT_IO),
    (ParseError, EXIT_PARSE),
    ((ConfigError, InvalidSpec, UnknownFigure), EXIT_CONFIG),
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MagnomechError as exc:
        print(f"magnomech: error: {exc}", file=sys.stderr)
        for error_types, code in _EXIT_BY_ERROR:
            if isinstance(exc, error_types):
                return code
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
