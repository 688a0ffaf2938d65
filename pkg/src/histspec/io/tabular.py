"""Delimited-text ingestion for column-wise transformation.

Cells must parse to finite floats; missing or malformed cells are rejected
with the offending data row (1-based, header excluded) and column named.
Imputation is out of scope: the transforms have no defined semantics for
absent values.
"""

from __future__ import annotations

import csv
import io as _stdio
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..exceptions import NonFiniteValueError, ParseError, RaggedRowsError

__all__ = ["TabularDataset", "read_csv", "write_csv"]


@dataclass(frozen=True)
class TabularDataset:
    """Named numeric columns of equal length."""

    column_names: tuple
    columns: tuple

    def __post_init__(self):
        names = tuple(str(c) for c in self.column_names)
        cols = tuple(np.asarray(c, dtype=float) for c in self.columns)
        if len(names) != len(cols):
            raise ParseError(
                f"{len(names)} column names for {len(cols)} columns"
            )
        if len(set(names)) != len(names):
            raise ParseError("column names must be unique")
        if cols and any(c.shape != cols[0].shape for c in cols):
            raise RaggedRowsError("columns differ in length")
        object.__setattr__(self, "column_names", names)
        object.__setattr__(self, "columns", cols)

    @property
    def n_rows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def column(self, key) -> np.ndarray:
        """Column by name or positional index."""
        if isinstance(key, str):
            try:
                key = self.column_names.index(key)
            except ValueError:
                raise KeyError(key) from None
        return self.columns[key]


def _as_text_lines(source):
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_text(encoding="utf-8").splitlines()
    if isinstance(source, (bytes, bytearray)):
        return bytes(source).decode("utf-8").splitlines()
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data.splitlines()


def read_csv(source, *, delimiter: str = ",", header: bool = True) -> TabularDataset:
    """Parse a delimited numeric table.

    source may be a path, raw bytes, or a file-like object.  With
    header=False, columns are named col1, col2, ...  Error messages count
    data rows from 1, not counting the header.
    """
    rows = [r for r in csv.reader(_as_text_lines(source), delimiter=delimiter) if r]
    if not rows:
        raise ParseError("empty input: no rows to parse")

    if header:
        names = [cell.strip() for cell in rows[0]]
        data_rows = rows[1:]
        if any(not n for n in names):
            raise ParseError("blank column name in header")
    else:
        names = [f"col{i + 1}" for i in range(len(rows[0]))]
        data_rows = rows

    width = len(names)
    columns = [[] for _ in range(width)]
    for r, row in enumerate(data_rows, start=1):
        if len(row) != width:
            raise RaggedRowsError(
                f"row {r} has {len(row)} cells, expected {width}"
            )
        for j, cell in enumerate(row):
            text = cell.strip()
            try:
                value = float(text)
            except ValueError:
                kind = "missing" if not text else f"non-numeric value {text!r}"
                raise ParseError(
                    f"{kind} at row {r}, column {names[j]!r}"
                ) from None
            if not math.isfinite(value):
                raise NonFiniteValueError(
                    f"non-finite value {text!r} at row {r}, column {names[j]!r}"
                )
            columns[j].append(value)

    return TabularDataset(tuple(names), tuple(np.array(c) for c in columns))


def write_csv(dataset: TabularDataset, destination=None, *, delimiter: str = ",") -> bytes:
    """Serialize a dataset; floats use repr, so read_csv round trips exactly.

    Returns the encoded bytes; additionally writes them when destination is
    a path or binary file-like object.
    """
    buf = _stdio.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(dataset.column_names)
    for i in range(dataset.n_rows):
        writer.writerow([repr(float(col[i])) for col in dataset.columns])
    payload = buf.getvalue().encode("utf-8")

    if destination is not None:
        if isinstance(destination, (str, os.PathLike)):
            Path(destination).write_bytes(payload)
        else:
            destination.write(payload)
    return payload
