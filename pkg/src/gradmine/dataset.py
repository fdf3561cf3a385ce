"""Numerical databases: loading, validation, value access."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .errors import DuplicateAttribute, EmptyDataset, IndexOutOfRange, ParseError


@dataclass(frozen=True)
class Dataset:
    """Objects (rows) by numeric attributes (columns).

    ``rows`` is a read-only ``float64`` array of shape ``(n, m)``. Row order is
    kept as given; ``temporal_order`` declares whether it is meaningful.
    """

    attribute_names: tuple[str, ...]
    rows: np.ndarray
    temporal_order: bool = False
    _columns: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(str(a) for a in self.attribute_names)
        rows = np.array(self.rows, dtype=np.float64, copy=True)
        if rows.ndim != 2:
            raise EmptyDataset(f"expected a 2-d table, got shape {rows.shape}")
        n, m = rows.shape
        if n < 2 or m < 1:
            raise EmptyDataset(f"need at least 2 rows and 1 attribute, got {n}x{m}")
        if len(names) != m:
            raise ValueError(f"{len(names)} attribute names for {m} columns")
        if any(not a for a in names):
            raise DuplicateAttribute("empty attribute name")
        seen = set()
        for a in names:
            if a in seen:
                raise DuplicateAttribute(f"attribute {a!r} appears twice")
            seen.add(a)
        if not np.isfinite(rows).all():
            i, j = np.argwhere(~np.isfinite(rows))[0]
            raise ParseError(int(i) + 1, int(j) + 1, str(rows[i, j]))
        rows.setflags(write=False)
        cols = np.ascontiguousarray(rows.T)
        cols.setflags(write=False)
        object.__setattr__(self, "attribute_names", names)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_columns", cols)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def m(self) -> int:
        return self.rows.shape[1]

    def column(self, j: int) -> np.ndarray:
        return column(self, j)

    def index_of(self, name: str) -> int:
        try:
            return self.attribute_names.index(name)
        except ValueError:
            raise IndexOutOfRange(f"no attribute named {name!r}") from None

    def with_temporal(self, flag: bool = True) -> "Dataset":
        return Dataset(self.attribute_names, self.rows, temporal_order=flag)


def column(d: Dataset, j: int) -> np.ndarray:
    """Values of attribute ``j`` in row order (contiguous, read-only)."""
    if not 0 <= j < d.m:
        raise IndexOutOfRange(f"attribute index {j} outside [0, {d.m})")
    return d._columns[j]


def load_csv(source: IO | str | bytes, delimiter: str = ",", temporal: bool = False) -> Dataset:
    """Parse a header + numeric-cells CSV.

    ``source`` may be a text or binary stream, a path, or raw bytes. Row and
    column numbers in :class:`ParseError` are 1-based data coordinates (the
    header is not counted).
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8-sig")
    elif isinstance(source, str):
        with open(source, encoding="utf-8-sig", newline="") as fh:
            text = fh.read()
    else:
        data = source.read()
        text = data.decode("utf-8-sig") if isinstance(data, bytes) else data

    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
    header = None
    rows = []
    for rec in reader:
        if not rec or all(not c.strip() for c in rec):
            continue
        if header is None:
            header = [c.strip() for c in rec]
            continue
        if len(rec) != len(header):
            raise ParseError(len(rows) + 1, min(len(rec), len(header)) + 1,
                             f"<{len(rec)} cells, expected {len(header)}>")
        vals = []
        for j, cell in enumerate(rec):
            try:
                v = float(cell.strip())
            except ValueError:
                raise ParseError(len(rows) + 1, j + 1, cell) from None
            if not math.isfinite(v):
                raise ParseError(len(rows) + 1, j + 1, cell)
            vals.append(v)
        rows.append(vals)
    if header is None:
        raise EmptyDataset("no header row")
    if len(rows) < 2 or len(header) < 1:
        raise EmptyDataset(f"need at least 2 data rows, got {len(rows)}")
    return Dataset(tuple(header), np.array(rows, dtype=np.float64), temporal_order=temporal)


def to_csv(d: Dataset, delimiter: str = ",", fmt: str = "repr") -> str:
    """Serialize back to CSV text. ``fmt="repr"`` round-trips floats exactly."""
    out = io.StringIO()
    w = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    w.writerow(d.attribute_names)
    for r in d.rows:
        w.writerow([repr(float(v)) if fmt == "repr" else format(v, fmt) for v in r])
    return out.getvalue()


def from_columns(names: Sequence[str], columns: Sequence[Sequence[float]], temporal=False) -> Dataset:
    return Dataset(tuple(names), np.column_stack([np.asarray(c, float) for c in columns]), temporal)
