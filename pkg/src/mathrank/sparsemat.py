"""Column-compressed sparse weight matrices with a deterministic layout.

Entry (i, j) holds the weight of entity j citing entity i, so column j
collects the outgoing citations of entity j. Entries are stored
column-major, rows ascending within each column; absent entries are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SparseWeightMatrix:
    shape: tuple[int, int]
    indptr: np.ndarray  # int64, one slot per column plus one
    rowidx: np.ndarray  # int64, ascending within each column
    values: np.ndarray  # float64, strictly positive

    @classmethod
    def from_entries(
        cls, shape: tuple[int, int], entries: Iterable[tuple[int, int, float]]
    ) -> "SparseWeightMatrix":
        entry_list = list(entries)
        if not entry_list:
            rows = np.empty(0, dtype=np.int64)
            cols = np.empty(0, dtype=np.int64)
            vals = np.empty(0, dtype=np.float64)
        else:
            rows = np.array([e[0] for e in entry_list], dtype=np.int64)
            cols = np.array([e[1] for e in entry_list], dtype=np.int64)
            vals = np.array([e[2] for e in entry_list], dtype=np.float64)
        return cls.from_arrays(shape, rows, cols, vals)

    @classmethod
    def from_arrays(
        cls, shape: tuple[int, int], rows: np.ndarray, cols: np.ndarray, vals: np.ndarray
    ) -> "SparseWeightMatrix":
        n_rows, n_cols = shape
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.float64)
        if rows.size:
            if rows.min() < 0 or rows.max() >= n_rows:
                raise ValueError("row index out of bounds")
            if cols.min() < 0 or cols.max() >= n_cols:
                raise ValueError("column index out of bounds")
            if not np.all(vals > 0):
                raise ValueError("stored weights must be strictly positive")
        order = np.lexsort((rows, cols))
        rows, cols, vals = rows[order], cols[order], vals[order]
        if rows.size > 1:
            same = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
            if same.any():
                k = int(np.flatnonzero(same)[0])
                raise ValueError(f"duplicate entry at ({rows[k]}, {cols[k]})")
        counts = np.bincount(cols, minlength=n_cols) if cols.size else np.zeros(n_cols, dtype=np.int64)
        indptr = np.zeros(n_cols + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(shape, _frozen(indptr), _frozen(rows), _frozen(vals.copy()))

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    def with_values(self, values: np.ndarray) -> "SparseWeightMatrix":
        """Same sparsity pattern, new values."""
        values = np.asarray(values, dtype=np.float64)
        if values.shape != self.values.shape:
            raise ValueError("value array does not match the sparsity pattern")
        return SparseWeightMatrix(self.shape, self.indptr, self.rowidx, _frozen(values.copy()))

    @cached_property
    def colidx(self) -> np.ndarray:
        """Column index of each stored entry, aligned with rowidx/values."""
        return _frozen(np.repeat(
            np.arange(self.shape[1], dtype=np.int64), np.diff(self.indptr)))

    def column_sums(self) -> np.ndarray:
        cs = np.concatenate(([0.0], np.cumsum(self.values)))
        return cs[self.indptr[1:]] - cs[self.indptr[:-1]]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Row-major view (indptr, colidx, values); columns ascending per row."""
        n_rows = self.shape[0]
        order = np.argsort(self.rowidx, kind="stable")
        colidx = self.colidx[order]
        values = self.values[order]
        counts = (np.bincount(self.rowidx, minlength=n_rows)
                  if self.nnz else np.zeros(n_rows, dtype=np.int64))
        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return _frozen(indptr), _frozen(colidx), _frozen(values)

    def iter_entries(self) -> Iterator[tuple[int, int, float]]:
        """(row, col, value) triples in canonical column-major order."""
        colidx = self.colidx
        for k in range(self.nnz):
            yield int(self.rowidx[k]), int(colidx[k]), float(self.values[k])

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.float64)
        dense[self.rowidx, self.colidx] = self.values
        return dense
