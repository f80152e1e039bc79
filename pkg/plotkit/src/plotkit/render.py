"""Deterministic rendering of plot jobs to PNG or SVG files.

Rendering depends only on the job document and the input CSV bytes: the Agg
backend is forced, figure geometry and styling are fixed, SVG ids are
salted with a constant, and no timestamps are embedded. Gaps in the data
(empty CSV fields, e.g. at unstable sweep points) become nan and break the
drawn line rather than being interpolated across.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import IoError, MissingColumn, ParseError
from .job import PlotJob
from .table import Table, load_table

# stable curve colors keyed by the mode pair the quantity refers to, so the
# same bipartition looks the same across every figure
PAIR_COLORS = {
    "nm": "#e69f00",  # orange
    "mb": "#f0e442",  # yellow
    "nb": "#cc79a7",  # violet
}
DEFAULT_COLOR = "#555555"

LINE_STYLES = ("-", "--", ":", "-.")

_RC = {
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "plotkit",
    "path.simplify": False,
}


def color_for(column: str) -> str:
    for pair, color in PAIR_COLORS.items():
        if column.endswith(f"_{pair}"):
            return color
    return DEFAULT_COLOR


def _match_mask(table: Table, where: dict, context: str) -> np.ndarray:
    mask = np.ones(len(table), dtype=bool)
    for name, wanted in where.items():
        if name not in table.columns:
            raise MissingColumn(
                f"{context}: filter column {name!r} not in {table.path} "
                f"(columns: {', '.join(table.header)})"
            )
        column = table.columns[name]
        if isinstance(column, np.ndarray):
            try:
                want = float(wanted)
            except (TypeError, ValueError):
                raise MissingColumn(
                    f"{context}: filter value for numeric column {name!r} "
                    f"must be a number, got {wanted!r}"
                ) from None
            tolerance = 1e-9 * max(1.0, abs(want))
            mask &= np.abs(column - want) <= tolerance
        else:
            mask &= np.array([cell == wanted for cell in column])
    return mask


def _column(table: Table, name: str, context: str) -> np.ndarray:
    if name not in table.columns:
        raise MissingColumn(
            f"{context}: column {name!r} not in {table.path} "
            f"(columns: {', '.join(table.header)})"
        )
    return table.numeric(name)


def render(job: PlotJob, keep_figure: bool = False):
    """Render the job; returns the output path (and the Figure if asked).

    Raises MissingColumn when a curve, x-column, or filter references a
    column absent from its CSV; IoError when the output cannot be written.
    Input files are opened read-only and never modified.
    """
    job.validate()
    tables = [load_table(path) for path in job.inputs]

    with plt.rc_context(_RC):
        figure, axes = plt.subplots(
            job.rows,
            job.cols,
            figsize=(4.2 * job.cols, 3.2 * job.rows),
            squeeze=False,
        )
        flat_axes = axes.ravel()
        for ax in flat_axes[len(job.panels):]:
            ax.set_axis_off()

        for panel_number, (panel, ax) in enumerate(
            zip(job.panels, flat_axes), start=1
        ):
            color_uses: dict[str, int] = {}
            drew_any_label = False
            for curve in panel.curves:
                table = tables[curve.input]
                context = f"panel {panel_number}"
                x_name = panel.x_column or table.header[0]
                mask = _match_mask(table, curve.where, context)
                x = _column(table, x_name, context)[mask]
                y = _column(table, curve.column, context)[mask]

                color = color_for(curve.column)
                use = color_uses.get(color, 0)
                color_uses[color] = use + 1

                if x.size == 0 or bool(np.all(np.isnan(y))):
                    # nothing to draw: suppress the curve and its legend entry
                    continue
                ax.plot(
                    x,
                    y,
                    color=color,
                    linestyle=LINE_STYLES[use % len(LINE_STYLES)],
                    linewidth=1.6,
                    label=curve.label if curve.label is not None else curve.column,
                )
                drew_any_label = True

            if panel.title:
                ax.set_title(panel.title)
            if panel.x_label:
                ax.set_xlabel(panel.x_label)
            if panel.y_label:
                ax.set_ylabel(panel.y_label)
            if drew_any_label:
                ax.legend(loc="best", fontsize=8)

        figure.tight_layout()
        metadata = (
            {"Date": None} if job.output_format == "svg" else {"Software": None}
        )
        try:
            figure.savefig(
                job.output_path, format=job.output_format, metadata=metadata
            )
        except OSError as exc:
            plt.close(figure)
            raise IoError(f"cannot write {job.output_path}: {exc}") from exc

    if keep_figure:
        return job.output_path, figure
    plt.close(figure)
    return job.output_path
