"""Deterministic multi-panel line plots from sweep CSV files.

Consumes the CSV tables written by the magnomech sweep tool (or any CSV
with a leading axis column) and renders them to PNG/SVG with stable
per-quantity styling, nan-broken lines at missing values, and bit-stable
output for fixed inputs.
"""

__version__ = "0.1.0"

from .errors import (
    InvalidJob,
    IoError,
    MissingColumn,
    ParseError,
    PlotkitError,
)
from .job import Curve, Panel, PlotJob, job_from_dict, load_job
from .render import DEFAULT_COLOR, LINE_STYLES, PAIR_COLORS, color_for, render
from .table import Table, load_table

__all__ = [
    "__version__",
    "Curve",
    "DEFAULT_COLOR",
    "InvalidJob",
    "IoError",
    "LINE_STYLES",
    "MissingColumn",
    "PAIR_COLORS",
    "Panel",
    "ParseError",
    "PlotJob",
    "PlotkitError",
    "Table",
    "color_for",
    "job_from_dict",
    "load_job",
    "load_table",
    "render",
]
