"""Plot job document: inputs, panel layout, curves, output.

A job is a JSON object:

    {
      "inputs": ["fig4a.csv"],
      "layout": [1, 1],
      "panels": [
        {
          "title": "contrast vs detuning",
          "x_label": "delta_n (rad/s)",
          "y_label": "contrast",
          "x_column": "delta_n",
          "curves": [
            {"column": "n_nm", "label": "0.1 w_b",
             "where": {"delta_B": 6283185.3}, "input": 0}
          ]
        }
      ],
      "output": {"path": "fig4a.png", "format": "png"}
    }

``x_column`` defaults to the first CSV column; ``where`` keeps only rows
whose named columns match the given values (numeric match within 1e-9
relative); ``input`` indexes into ``inputs`` (default 0). ``format`` is
``png`` or ``svg`` and defaults to the output path suffix.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .errors import InvalidJob, IoError, ParseError

FORMATS = ("png", "svg")


@dataclass(frozen=True)
class Curve:
    column: str
    label: str | None = None
    input: int = 0
    where: dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Panel:
    curves: tuple[Curve, ...]
    title: str | None = None
    x_label: str | None = None
    y_label: str | None = None
    x_column: str | None = None


@dataclass(frozen=True)
class PlotJob:
    inputs: tuple[str, ...]
    rows: int
    cols: int
    panels: tuple[Panel, ...]
    output_path: str
    output_format: str

    def validate(self):
        if not self.inputs:
            raise InvalidJob("job needs at least one input CSV")
        if self.rows < 1 or self.cols < 1:
            raise InvalidJob("layout must be [rows >= 1, cols >= 1]")
        if not self.panels:
            raise InvalidJob("job needs at least one panel")
        if len(self.panels) > self.rows * self.cols:
            raise InvalidJob(
                f"{len(self.panels)} panels do not fit a "
                f"{self.rows}x{self.cols} layout"
            )
        if self.output_format not in FORMATS:
            raise InvalidJob(
                f"unsupported output format {self.output_format!r}; "
                f"valid: {', '.join(FORMATS)}"
            )
        for number, panel in enumerate(self.panels, start=1):
            if not panel.curves:
                raise InvalidJob(f"panel {number} has no curves")
            for curve in panel.curves:
                if not (0 <= curve.input < len(self.inputs)):
                    raise InvalidJob(
                        f"panel {number}: curve {curve.column!r} references "
                        f"input {curve.input}, but the job has "
                        f"{len(self.inputs)} input(s)"
                    )


def _require(doc: dict, key: str, context: str):
    if key not in doc:
        raise InvalidJob(f"{context} is missing {key!r}")
    return doc[key]


def job_from_dict(doc: dict) -> PlotJob:
    """Build and validate a PlotJob from a parsed job document."""
    if not isinstance(doc, dict):
        raise InvalidJob(f"job must be a JSON object, got {type(doc).__name__}")

    inputs = _require(doc, "inputs", "job")
    if isinstance(inputs, str):
        inputs = [inputs]
    if not isinstance(inputs, list) or not all(isinstance(p, str) for p in inputs):
        raise InvalidJob("inputs must be a list of CSV paths")

    layout = doc.get("layout", [1, 1])
    if (
        not isinstance(layout, (list, tuple))
        or len(layout) != 2
        or not all(isinstance(v, int) for v in layout)
    ):
        raise InvalidJob("layout must be [rows, cols]")
    rows, cols = layout

    panels_doc = _require(doc, "panels", "job")
    if not isinstance(panels_doc, list):
        raise InvalidJob("panels must be a list")
    panels = []
    for number, panel_doc in enumerate(panels_doc, start=1):
        if not isinstance(panel_doc, dict):
            raise InvalidJob(f"panel {number} must be an object")
        curves_doc = _require(panel_doc, "curves", f"panel {number}")
        if not isinstance(curves_doc, list):
            raise InvalidJob(f"panel {number}: curves must be a list")
        curves = []
        for curve_doc in curves_doc:
            if isinstance(curve_doc, str):
                curve_doc = {"column": curve_doc}
            if not isinstance(curve_doc, dict):
                raise InvalidJob(f"panel {number}: each curve must be an object")
            column = _require(curve_doc, "column", f"panel {number} curve")
            where = curve_doc.get("where", {})
            if not isinstance(where, dict):
                raise InvalidJob(f"panel {number}: where must be an object")
            curves.append(
                Curve(
                    column=str(column),
                    label=curve_doc.get("label"),
                    input=int(curve_doc.get("input", 0)),
                    where=dict(where),
                )
            )
        panels.append(
            Panel(
                curves=tuple(curves),
                title=panel_doc.get("title"),
                x_label=panel_doc.get("x_label"),
                y_label=panel_doc.get("y_label"),
                x_column=panel_doc.get("x_column"),
            )
        )

    output = _require(doc, "output", "job")
    if isinstance(output, str):
        output = {"path": output}
    if not isinstance(output, dict):
        raise InvalidJob("output must be an object or a path string")
    path = _require(output, "path", "output")
    fmt = output.get("format")
    if fmt is None:
        fmt = os.path.splitext(path)[1].lstrip(".").lower()

    job = PlotJob(
        inputs=tuple(inputs),
        rows=rows,
        cols=cols,
        panels=tuple(panels),
        output_path=str(path),
        output_format=str(fmt),
    )
    job.validate()
    return job


def load_job(path: str) -> PlotJob:
    """Read a job JSON file; raises IoError / ParseError / InvalidJob."""
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise IoError(f"cannot read job file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"job file {path} is not valid JSON: {exc}") from exc
    return job_from_dict(doc)
