"""Matrix Market ingestion and the canonical CSR matrix type.

All downstream code sees one canonical form: general (symmetry expanded at
parse time), duplicates summed, column indices strictly increasing within
each row. Matrices are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, SchemaError

CSR_CACHE_FORMAT = "kernelpick-csr/1"

_FIELDS = {"real", "integer", "pattern"}
_SYMMETRIES = {"general", "symmetric", "skew-symmetric"}


@dataclass(frozen=True)
class KnownFeatures:
    """Structure metrics available at zero runtime cost."""

    rows: int
    cols: int
    nnz: int


@dataclass(frozen=True)
class SparseMatrixCSR:
    n_rows: int
    n_cols: int
    row_offsets: np.ndarray  # int64, length n_rows + 1
    col_indices: np.ndarray  # int64, length nnz
    values: np.ndarray  # float64, length nnz

    def __post_init__(self):
        object.__setattr__(self, "row_offsets", _freeze(self.row_offsets, np.int64))
        object.__setattr__(self, "col_indices", _freeze(self.col_indices, np.int64))
        object.__setattr__(self, "values", _freeze(self.values, np.float64))
        self._validate()

    @property
    def nnz(self) -> int:
        return int(self.row_offsets[-1])

    def row_length(self, row: int) -> int:
        return int(self.row_offsets[row + 1] - self.row_offsets[row])

    def _validate(self) -> None:
        off, col = self.row_offsets, self.col_indices
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("negative matrix dimensions")
        if off.shape != (self.n_rows + 1,):
            raise ValueError("row_offsets length must be n_rows + 1")
        if off[0] != 0 or np.any(np.diff(off) < 0):
            raise ValueError("row_offsets must start at 0 and be non-decreasing")
        if col.shape != (off[-1],) or self.values.shape != (off[-1],):
            raise ValueError("col_indices/values length must equal row_offsets[-1]")
        if col.size:
            if col.min() < 0 or col.max() >= self.n_cols:
                raise ValueError("column index out of range")
            lengths = np.diff(off)
            row_of = np.repeat(np.arange(self.n_rows), lengths)
            same_row = row_of[1:] == row_of[:-1]
            if np.any(np.diff(col)[same_row] <= 0):
                raise ValueError("col_indices must be strictly increasing within a row")


def _freeze(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    if out.ndim != 1:
        raise ValueError("expected a 1-D array")
    out.setflags(write=False)
    return out


def known_features(m: SparseMatrixCSR) -> KnownFeatures:
    """Constant-time structure read; never inspects stored entries."""
    return KnownFeatures(rows=m.n_rows, cols=m.n_cols, nnz=int(m.row_offsets[-1]))


def csr_from_coo(n_rows: int, n_cols: int, rows, cols, vals) -> SparseMatrixCSR:
    """Canonicalize coordinate triples: sort, sum duplicates, build offsets."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.asarray(vals, dtype=np.float64)
    order = np.lexsort((cols, rows))
    r, c, v = rows[order], cols[order], vals[order]
    if r.size:
        first = np.empty(r.size, dtype=bool)
        first[0] = True
        first[1:] = (r[1:] != r[:-1]) | (c[1:] != c[:-1])
        starts = np.flatnonzero(first)
        v = np.add.reduceat(v, starts)
        r, c = r[starts], c[starts]
    offsets = np.zeros(n_rows + 1, dtype=np.int64)
    np.cumsum(np.bincount(r, minlength=n_rows), out=offsets[1:])
    return SparseMatrixCSR(n_rows, n_cols, offsets, c, v)


def parse_matrix_market(data: str | bytes) -> SparseMatrixCSR:
    """Parse a coordinate Matrix Market file into canonical CSR.

    Accepts real/integer/pattern fields and general/symmetric/skew-symmetric
    storage. Symmetric storage is expanded (off-diagonal mirror entries),
    duplicate coordinates are summed, pattern entries get value 1.0.
    Errors carry the 1-based line number of the offending line.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    lines = data.splitlines()
    if not lines:
        raise ParseError("line 1: empty file, missing Matrix Market header")

    header = lines[0].strip()
    parts = header.lower().split()
    if len(parts) != 5 or parts[0] != "%%matrixmarket":
        raise ParseError(f"line 1: malformed header {header!r}")
    _, obj, fmt, field, symmetry = parts
    if obj != "matrix":
        raise ParseError(f"line 1: unsupported object {obj!r}")
    if fmt != "coordinate":
        raise ParseError(f"line 1: unsupported format {fmt!r} (coordinate only)")
    if field not in _FIELDS:
        raise ParseError(f"line 1: unsupported field {field!r} (complex data is out of scope)")
    if symmetry not in _SYMMETRIES:
        raise ParseError(f"line 1: unsupported symmetry {symmetry!r}")
    pattern = field == "pattern"

    lineno = 1
    size = None
    for lineno in range(2, len(lines) + 1):
        text = lines[lineno - 1].strip()
        if not text or text.startswith("%"):
            continue
        toks = text.split()
        if len(toks) != 3:
            raise ParseError(f"line {lineno}: size line must be 'rows cols nnz', got {text!r}")
        try:
            n_rows, n_cols, n_entries = (int(t) for t in toks)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer size line {text!r}") from None
        if n_rows < 0 or n_cols < 0 or n_entries < 0:
            raise ParseError(f"line {lineno}: negative size values")
        size = (n_rows, n_cols, n_entries)
        break
    if size is None:
        raise ParseError(f"line {lineno}: missing size line")
    n_rows, n_cols, n_entries = size

    want_vals = 2 if pattern else 3
    ri: list[int] = []
    ci: list[int] = []
    vi: list[float] = []
    seen = 0
    for entry_lineno in range(lineno + 1, len(lines) + 1):
        text = lines[entry_lineno - 1].strip()
        if not text or text.startswith("%"):
            continue
        if seen == n_entries:
            raise ParseError(f"line {entry_lineno}: extra data after {n_entries} entries")
        toks = text.split()
        if len(toks) != want_vals:
            raise ParseError(
                f"line {entry_lineno}: expected {want_vals} fields, got {len(toks)}"
            )
        try:
            i = int(toks[0])
            j = int(toks[1])
            v = 1.0 if pattern else float(toks[2])
        except ValueError:
            raise ParseError(f"line {entry_lineno}: malformed entry {text!r}") from None
        if not np.isfinite(v):
            raise ParseError(f"line {entry_lineno}: non-finite value {toks[-1]!r}")
        if not (1 <= i <= n_rows) or not (1 <= j <= n_cols):
            raise ParseError(f"line {entry_lineno}: index ({i}, {j}) out of range")
        if symmetry == "skew-symmetric" and i == j:
            raise ParseError(f"line {entry_lineno}: diagonal entry in skew-symmetric file")
        ri.append(i - 1)
        ci.append(j - 1)
        vi.append(v)
        if symmetry != "general" and i != j:
            ri.append(j - 1)
            ci.append(i - 1)
            vi.append(-v if symmetry == "skew-symmetric" else v)
        seen += 1
    if seen != n_entries:
        raise ParseError(
            f"line {len(lines)}: truncated entry list, expected {n_entries} entries, got {seen}"
        )
    return csr_from_coo(n_rows, n_cols, ri, ci, vi)


def write_matrix_market(m: SparseMatrixCSR) -> str:
    """Serialize canonical CSR as coordinate/real/general text."""
    out = ["%%MatrixMarket matrix coordinate real general"]
    out.append(f"{m.n_rows} {m.n_cols} {m.nnz}")
    lengths = np.diff(m.row_offsets)
    row_of = np.repeat(np.arange(m.n_rows), lengths)
    for i, j, v in zip(row_of, m.col_indices, m.values):
        out.append(f"{i + 1} {j + 1} {v!r}")
    return "\n".join(out) + "\n"


def csr_to_json(m: SparseMatrixCSR) -> str:
    """Versioned cache serialization (lossless: values stored via repr)."""
    doc = {
        "format": CSR_CACHE_FORMAT,
        "n_rows": m.n_rows,
        "n_cols": m.n_cols,
        "row_offsets": m.row_offsets.tolist(),
        "col_indices": m.col_indices.tolist(),
        "values": [repr(v) for v in m.values.tolist()],
    }
    return json.dumps(doc, separators=(",", ":"))


def csr_from_json(text: str) -> SparseMatrixCSR:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad CSR cache: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != CSR_CACHE_FORMAT:
        raise SchemaError(f"unsupported CSR cache format {doc.get('format')!r}")
    try:
        return SparseMatrixCSR(
            int(doc["n_rows"]),
            int(doc["n_cols"]),
            np.asarray(doc["row_offsets"], dtype=np.int64),
            np.asarray(doc["col_indices"], dtype=np.int64),
            np.asarray([float(v) for v in doc["values"]], dtype=np.float64),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed CSR cache: {e}") from None
