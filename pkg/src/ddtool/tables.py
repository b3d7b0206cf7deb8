"""Labeled delimited tables.

File contract: UTF-8, comma separated, first row holds column identifiers
with a blank or ``id`` first cell, first column holds row identifiers.  Two
kinds are supported: ``continuous`` (any finite reals) and ``counts``
(nonnegative integers).  Errors carry one-based line and column positions.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadWeights,
    DimensionMismatch,
    DuplicateId,
    NonFiniteValue,
    NonIntegerCount,
    ParseError,
)

KINDS = ("continuous", "counts")


@dataclass(frozen=True)
class TableFile:
    """A parsed table: row ids, column ids, float values, and the kind."""

    row_ids: tuple
    col_ids: tuple
    values: np.ndarray
    kind: str


def _check_unique(ids, what, path):
    seen = {}
    for pos, name in enumerate(ids):
        if name in seen:
            raise DuplicateId(
                f"{path}: duplicate {what} id {name!r} "
                f"(positions {seen[name] + 1} and {pos + 1})"
            )
        seen[name] = pos


def load_table(path, kind: str = "continuous") -> TableFile:
    """Parse a table file, validating ids and the entry domain of ``kind``."""
    if kind not in KINDS:
        raise ParseError(f"unknown table kind {kind!r}, expected one of {KINDS}")
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8: {exc}") from exc
    rows = [row for row in rows if row]
    if not rows:
        raise ParseError(f"{path}: file is empty")
    header = [cell.strip() for cell in rows[0]]
    if header[0].lower() not in ("", "id"):
        raise ParseError(
            f"{path}: line 1: first header cell must be blank or 'id', "
            f"got {header[0]!r}"
        )
    col_ids = header[1:]
    if not col_ids:
        raise ParseError(f"{path}: line 1: no data columns")
    if any(name == "" for name in col_ids):
        raise ParseError(f"{path}: line 1: empty column id")
    _check_unique(col_ids, "column", path)
    if len(rows) < 2:
        raise ParseError(f"{path}: no data rows")

    row_ids = []
    data = []
    width = len(header)
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise ParseError(
                f"{path}: line {line_no}: expected {width} fields, got {len(row)}"
            )
        rid = row[0].strip()
        if rid == "":
            raise ParseError(f"{path}: line {line_no}: empty row id")
        row_ids.append(rid)
        parsed = []
        for col_no, cell in enumerate(row[1:], start=2):
            try:
                value = float(cell)
            except ValueError as exc:
                raise ParseError(
                    f"{path}: line {line_no}, column {col_no}: "
                    f"cannot parse {cell.strip()!r} as a number"
                ) from exc
            if not np.isfinite(value):
                raise NonFiniteValue(
                    f"{path}: line {line_no}, column {col_no}: "
                    f"non-finite value {cell.strip()!r}"
                )
            if kind == "counts" and (value != int(value) or value < 0):
                raise NonIntegerCount(
                    f"{path}: line {line_no}, column {col_no}: "
                    f"{cell.strip()!r} is not a nonnegative integer"
                )
            parsed.append(value)
        data.append(parsed)
    _check_unique(row_ids, "row", path)
    values = np.array(data, dtype=float)
    values.flags.writeable = False
    return TableFile(
        row_ids=tuple(row_ids), col_ids=tuple(col_ids), values=values, kind=kind
    )


def load_weights(path, row_ids) -> np.ndarray:
    """Read a one-column weight table aligned with ``row_ids``, normalized.

    The weights file follows the same table contract with a single data
    column; its row ids must match the data table's ids in order.  Entries
    must be strictly positive; they are rescaled to sum to one.
    """
    tf = load_table(path, "continuous")
    if len(tf.col_ids) != 1:
        raise BadWeights(
            f"{path}: weights file must have exactly one column, "
            f"got {len(tf.col_ids)}"
        )
    if tf.row_ids != tuple(row_ids):
        raise DimensionMismatch(
            f"{path}: weight row ids do not match the data table"
        )
    w = tf.values[:, 0].copy()
    if np.any(w <= 0.0):
        raise BadWeights(f"{path}: weights must be strictly positive")
    return w / w.sum()
