"""Square contingency tables and the closed-form symmetric estimates.

Counts are stored as ``int64`` arrays, probabilities as ``float64``.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass

import numpy as np


class TableError(ValueError):
    """Base class for table parse and validation failures."""


class EmptyTableError(TableError):
    pass


class NonSquareError(TableError):
    pass


class NonIntegerError(TableError):
    pass


class NegativeEntryError(TableError):
    pass


class DimensionError(TableError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ContingencyTable:
    """An I x I table of nonnegative integer counts (I >= 2)."""

    counts: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.counts)
        if raw.size == 0:
            raise EmptyTableError("table has no cells")
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise NonSquareError(f"table must be square, got shape {raw.shape}")
        if raw.shape[0] < 2:
            raise DimensionError(f"table dimension must be at least 2, got {raw.shape[0]}")
        if raw.dtype.kind not in "iu":
            as_float = raw.astype(float)
            if not np.all(np.isfinite(as_float)) or np.any(as_float != np.round(as_float)):
                raise NonIntegerError("all cells must be integers")
        counts = raw.astype(np.int64)
        if np.any(counts < 0):
            raise NegativeEntryError("cell counts must be nonnegative")
        if counts.sum() < 1:
            raise EmptyTableError("table total must be at least 1")
        object.__setattr__(self, "counts", _frozen(counts))

    @property
    def dim(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def row_margin(self, i: int | None = None):
        rows = self.counts.sum(axis=1)
        return rows if i is None else int(rows[i])

    def col_margin(self, i: int | None = None):
        cols = self.counts.sum(axis=0)
        return cols if i is None else int(cols[i])

    def to_json(self) -> str:
        return json.dumps(
            {"dim": self.dim, "counts": self.counts.tolist(), "total": self.total}
        )

    @classmethod
    def from_json(cls, text: str) -> "ContingencyTable":
        return cls(np.array(json.loads(text)["counts"]))


@dataclass(frozen=True)
class SymmetricTable:
    """Symmetric nonnegative table summing to one."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise NonSquareError(f"symmetric table must be square, got shape {vals.shape}")
        if np.any(vals < 0):
            raise NegativeEntryError("symmetric table entries must be nonnegative")
        if not np.array_equal(vals, vals.T):
            raise ValueError("table is not symmetric")
        if abs(vals.sum() - 1.0) > 1e-12:
            raise ValueError(f"entries sum to {vals.sum()!r}, expected 1")
        object.__setattr__(self, "values", _frozen(vals))

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def parse_table(text: str) -> ContingencyTable:
    """Parse comma-separated counts, one row per line, no header."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise EmptyTableError("empty input")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or width != len(rows):
        raise NonSquareError(
            f"expected a square grid, got {len(rows)} rows of widths {sorted({len(r) for r in rows})}"
        )
    cells = []
    for r in rows:
        out = []
        for c in r:
            c = c.strip()
            try:
                out.append(int(c))
            except ValueError:
                raise NonIntegerError(f"cell {c!r} is not an integer") from None
        cells.append(out)
    return ContingencyTable(np.array(cells, dtype=np.int64))


def load_table(path: str | os.PathLike) -> ContingencyTable:
    with open(path, newline="") as fh:
        return parse_table(fh.read())


def format_table(table: ContingencyTable) -> str:
    return "".join(",".join(str(int(v)) for v in row) + "\n" for row in table.counts)


def write_table(table: ContingencyTable, path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(format_table(table))


def _counts(n) -> np.ndarray:
    if isinstance(n, ContingencyTable):
        return n.counts.astype(float)
    return np.asarray(n, dtype=float)


def symmetric_mle(n) -> SymmetricTable:
    """Closed-form estimate ``(n_ij + n_ji) / (2 n_++)`` of the symmetric table."""
    c = _counts(n)
    return SymmetricTable((c + c.T) / (2.0 * c.sum()))


def si_mle(n) -> np.ndarray:
    """Estimates ``(n_i+ + n_+i) / (2 n_++)`` of the symmetric-independence weights."""
    c = _counts(n)
    return (c.sum(axis=1) + c.sum(axis=0)) / (2.0 * c.sum())


def mh_residual(p) -> np.ndarray:
    """Row margin minus column margin, per category."""
    p = np.asarray(p, dtype=float)
    return p.sum(axis=1) - p.sum(axis=0)
