"""Read-only CSV tables with numeric columns and gap-preserving missing values.

A column whose every non-empty cell parses as a float becomes a numeric
column with ``nan`` at empty cells (so downstream line plots break at the
gap instead of interpolating). Any other column is kept as strings.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import IoError, ParseError


@dataclass(frozen=True)
class Table:
    path: str
    header: tuple[str, ...]
    columns: dict[str, object]  # name -> np.ndarray (float) | list[str]

    def numeric(self, name: str) -> np.ndarray:
        column = self.columns[name]
        if not isinstance(column, np.ndarray):
            raise ParseError(f"{self.path}: column {name!r} is not numeric")
        return column

    def __len__(self) -> int:
        return len(self.columns[self.header[0]])


def _to_floats(cells: list[str]) -> np.ndarray | None:
    values = np.empty(len(cells))
    for i, cell in enumerate(cells):
        if cell == "":
            values[i] = math.nan
            continue
        try:
            values[i] = float(cell)
        except ValueError:
            return None
    return values


def load_table(path: str) -> Table:
    """Load one CSV file; raises IoError / ParseError, never mutates it."""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration:
                raise ParseError(f"{path}: empty CSV") from None
            records = []
            for line_number, record in enumerate(reader, start=2):
                if len(record) != len(header):
                    raise ParseError(
                        f"{path}:{line_number}: expected {len(header)} fields, "
                        f"got {len(record)}"
                    )
                records.append(record)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if len(set(header)) != len(header):
        raise ParseError(f"{path}: duplicate column names")
    if not records:
        raise ParseError(f"{path}: no data rows")

    columns: dict[str, object] = {}
    for index, name in enumerate(header):
        cells = [record[index] for record in records]
        values = _to_floats(cells)
        columns[name] = values if values is not None else cells
    return Table(path=path, header=tuple(header), columns=columns)
