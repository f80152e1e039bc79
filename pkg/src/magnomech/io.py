"""CSV / JSON-lines serialization, metadata sidecars, and config loading.

CSV files are bit-stable: floats are written with repr-style shortest
round-trip formatting at 17 significant digits, missing values as empty
fields. The sidecar stores every resolved parameter in exact rad/s form so
that sidecar -> loader -> sweep reproduces the identical CSV.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict

from . import __version__
from .errors import ConfigError, IoError, ParseError
from .params import (
    SystemParams,
    baseline_params,
    params_from_config,
    params_to_config,
)
from .sweep import Axis, SweepResult, SweepSpec

_FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    return _FLOAT_FORMAT % value


def load_params_file(path: str | None, overrides: list[str] | None = None) -> SystemParams:
    """Load a JSON parameter file (baseline when path is None) plus --set overrides."""
    from .params import apply_dotted_overrides

    doc = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as handle:
                doc = json.load(handle)
        except OSError as exc:
            raise IoError(f"cannot read params file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"params file {path} is not valid JSON: {exc}") from exc
    if overrides:
        doc = apply_dotted_overrides(doc, overrides)
    return params_from_config(doc, base=baseline_params())


def sweep_header(spec: SweepSpec) -> list[str]:
    header = [spec.axis1.parameter]
    if spec.axis2 is not None:
        header.append(spec.axis2.parameter)
    header += ["status", "stability_margin"]
    header += list(spec.ordered_quantities())
    return header


def _row_record(spec: SweepSpec, row) -> list:
    record = [row.axis1]
    if spec.axis2 is not None:
        record.append(row.axis2)
    record.append(row.status)
    record.append(row.stability_margin)
    for q in spec.ordered_quantities():
        record.append(row.values.get(q))
    return record


def write_sweep_csv(result: SweepResult, path: str) -> None:
    """Write the result table as CSV with empty fields for missing values."""
    spec = result.spec
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(sweep_header(spec))
            for row in result.rows:
                writer.writerow(
                    [
                        value
                        if isinstance(value, str)
                        else ("" if value is None else format_float(value))
                        for value in _row_record(spec, row)
                    ]
                )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_sweep_jsonl(result: SweepResult, path: str) -> None:
    """Write the result table as JSON lines (missing values as null)."""
    spec = result.spec
    header = sweep_header(spec)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            for row in result.rows:
                record = dict(zip(header, _row_record(spec, row)))
                handle.write(json.dumps(record) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def meta_sidecar_path(out_path: str) -> str:
    stem, _ = os.path.splitext(out_path)
    return stem + ".meta.json"


def _axis_doc(axis: Axis | None) -> dict | None:
    if axis is None:
        return None
    return {
        "parameter": axis.parameter,
        "start": axis.start,
        "stop": axis.stop,
        "count": axis.count,
        "scale": axis.scale,
    }


def _params_rad_doc(params: SystemParams) -> dict:
    doc = asdict(params)
    drive = doc.pop("drive")
    drive["mode"] = params.drive.mode
    doc["drive"] = drive
    return doc


def write_meta_sidecar(result: SweepResult, out_path: str, command: str) -> str:
    """Write the provenance sidecar next to the output file.

    params_rad_per_s is exact (round-trips through JSON float repr); the
    /2pi block is informational, for humans reading the file.
    """
    spec = result.spec
    doc = {
        "tool": "magnomech",
        "version": __version__,
        "command": command,
        "preset": result.preset,
        "params_rad_per_s": _params_rad_doc(spec.base),
        "params_over_2pi_hz": params_to_config(spec.base),
        "axis1": _axis_doc(spec.axis1),
        "axis2": _axis_doc(spec.axis2),
        "quantities": list(spec.ordered_quantities()),
        "nonrecip_pairing": spec.nonrecip_pairing,
    }
    path = meta_sidecar_path(out_path)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(doc, handle, indent=2)
            handle.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def _params_from_rad_doc(doc: dict) -> SystemParams:
    from .params import EffectiveDrive, MicroscopicDrive

    data = dict(doc)
    drive_doc = dict(data.pop("drive"))
    mode = drive_doc.pop("mode")
    if mode == "effective":
        drive = EffectiveDrive(**drive_doc)
    elif mode == "microscopic":
        drive = MicroscopicDrive(**drive_doc)
    else:
        raise ParseError(f"unknown drive mode in sidecar: {mode!r}")
    try:
        return SystemParams(drive=drive, **data)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad sidecar params: {exc}") from exc


def spec_from_meta(path: str) -> tuple[SweepSpec, str | None]:
    """Rebuild the exact SweepSpec recorded in a sidecar file."""
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise IoError(f"cannot read sidecar {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"sidecar {path} is not valid JSON: {exc}") from exc
    try:
        base = _params_from_rad_doc(doc["params_rad_per_s"])
        axis1 = Axis(**doc["axis1"])
        axis2 = Axis(**doc["axis2"]) if doc.get("axis2") else None
        spec = SweepSpec(
            base=base,
            axis1=axis1,
            axis2=axis2,
            quantities=tuple(doc["quantities"]),
            nonrecip_pairing=bool(doc["nonrecip_pairing"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"sidecar {path} is missing fields: {exc}") from exc
    return spec, doc.get("preset")


def read_sweep_csv(path: str) -> tuple[list[str], list[dict]]:
    """Read a sweep CSV back into (header, rows-as-dicts).

    Numeric fields become floats, empty fields None; the status column stays
    a string. Raises ParseError on structural problems.
    """
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration:
                raise ParseError(f"{path}: empty CSV") from None
            if "status" not in header:
                raise ParseError(f"{path}: not a sweep CSV (no status column)")
            rows = []
            for line_number, record in enumerate(reader, start=2):
                if len(record) != len(header):
                    raise ParseError(
                        f"{path}:{line_number}: expected {len(header)} fields, "
                        f"got {len(record)}"
                    )
                row = {}
                for key, raw in zip(header, record):
                    if key == "status":
                        row[key] = raw
                    elif raw == "":
                        row[key] = None
                    else:
                        try:
                            row[key] = float(raw)
                        except ValueError:
                            raise ParseError(
                                f"{path}:{line_number}: bad number {raw!r} in {key}"
                            ) from None
                rows.append(row)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return header, rows
