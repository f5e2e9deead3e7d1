"""Row-density statistics with measured collection cost, and Kendall
rank-correlation diagnostics.

Density statistics are reduced to exact integer aggregates (min/max/sum/
sum-of-squares of row lengths) by the kernel backend; the float epilogue
below is the single place where rounding happens, so results are
bit-reproducible and independent of the active backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .clock import perf_clock
from .sparse import SparseMatrixCSR

Clock = Callable[[], float]

# Feature columns of the correlation diagnostic, in display order.
CORRELATION_FEATURES = (
    "rows",
    "nnz",
    "max_density",
    "min_density",
    "mean_density",
    "var_density",
)


@dataclass(frozen=True)
class GatheredFeatures:
    """Statistics computed by an extra pass over the data, plus the cost of
    that pass."""

    max_row_density: float
    min_row_density: float
    mean_row_density: float
    var_row_density: float
    collection_time: float

    def as_vector(self) -> tuple[float, float, float, float]:
        return (
            self.max_row_density,
            self.min_row_density,
            self.mean_row_density,
            self.var_row_density,
        )


def row_density(m: SparseMatrixCSR, row: int) -> float:
    """Stored-entry count of `row` divided by the column count."""
    if m.n_cols == 0:
        raise ValueError("row density undefined for a zero-column matrix")
    if not 0 <= row < m.n_rows:
        raise IndexError(f"row {row} out of range for {m.n_rows}-row matrix")
    return m.row_length(row) / m.n_cols


def gather_features(m: SparseMatrixCSR, clock: Clock | None = None) -> GatheredFeatures:
    """One pass over row offsets: max/min/mean/population-variance of
    per-row densities, timed by the supplied clock."""
    if m.n_rows == 0:
        raise ValueError("cannot gather features of an empty matrix")
    if m.n_cols == 0:
        raise ValueError("cannot gather features of a zero-column matrix")
    clock = clock or perf_clock
    t0 = clock()
    lo, hi, s1, s2 = _kernels.length_stats(m.row_offsets)
    n, c = m.n_rows, m.n_cols
    max_d = hi / c
    min_d = lo / c
    denom = float(n) * float(c)
    mean_d = s1 / denom
    if hi == lo:
        var_d = 0.0
    else:
        # E[d^2] - E[d]^2 over exact integer sums; clamp rounding residue.
        var_d = s2 / (denom * float(c)) - mean_d * mean_d
        if var_d < 0.0:
            var_d = 0.0
    elapsed = clock() - t0
    return GatheredFeatures(max_d, min_d, mean_d, var_d, elapsed)


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """Tie-corrected Kendall correlation (tau-b) via full pair counting.

    Inputs are dataset-sized, so the O(n^2) sign-matrix formulation is fine
    and keeps the counts exact integers.
    """
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or ya.ndim != 1:
        raise ValueError("kendall_tau expects 1-D sequences")
    if xa.size != ya.size:
        raise ValueError(f"length mismatch: {xa.size} vs {ya.size}")
    n = xa.size
    if n < 2:
        raise ValueError("kendall_tau needs at least 2 observations")
    dx = np.sign(xa[:, None] - xa[None, :]).astype(np.int8)
    dy = np.sign(ya[:, None] - ya[None, :]).astype(np.int8)
    s = int((dx.astype(np.int64) * dy.astype(np.int64)).sum()) // 2
    n0 = n * (n - 1) // 2
    ties_x = (int((dx == 0).sum()) - n) // 2
    ties_y = (int((dy == 0).sum()) - n) // 2
    if ties_x == n0 or ties_y == n0:
        raise ValueError("correlation undefined: one input is entirely tied")
    return s / math.sqrt((n0 - ties_x) * (n0 - ties_y))


@dataclass(frozen=True)
class CorrelationTable:
    """Per (kernel, feature) tau values; None marks an undefined cell."""

    kernels: tuple[str, ...]
    features: tuple[str, ...]
    cells: dict[tuple[str, str], float | None]

    def format_text(self, absolute: bool = False) -> str:
        width = max(len(k) for k in self.kernels) if self.kernels else 6
        head = "kernel".ljust(width) + "".join(f"  {f:>12}" for f in self.features)
        lines = [head]
        for k in self.kernels:
            cols = []
            for f in self.features:
                tau = self.cells[(k, f)]
                if tau is None:
                    cols.append(f"  {'n/a':>12}")
                else:
                    v = abs(tau) if absolute else tau
                    cols.append(f"  {v:>12.4f}")
            lines.append(k.ljust(width) + "".join(cols))
        return "\n".join(lines)


def correlation_table(rows, kernels: Sequence[str]) -> CorrelationTable:
    """Tau between each kernel's per-iteration runtime and each feature.

    `rows` are joined dataset rows (see data.DatasetRow). Cells where tau is
    undefined (fewer than 2 usable rows, or an all-tied input) are None.
    """
    if len(rows) < 2:
        raise ValueError("correlation table needs at least 2 dataset rows")
    cells: dict[tuple[str, str], float | None] = {}
    for kernel in kernels:
        for feature in CORRELATION_FEATURES:
            xs, ys = [], []
            for row in rows:
                timing = row.timings.get(kernel)
                value = _feature_value(row, feature)
                if timing is None or value is None:
                    continue
                xs.append(timing[0])
                ys.append(value)
            try:
                tau = kendall_tau(xs, ys) if len(xs) >= 2 else None
            except ValueError:
                tau = None
            cells[(kernel, feature)] = tau
    return CorrelationTable(tuple(kernels), CORRELATION_FEATURES, cells)


def _feature_value(row, feature: str) -> float | None:
    if feature == "rows":
        return None if row.known is None else float(row.known.rows)
    if feature == "nnz":
        return None if row.known is None else float(row.known.nnz)
    if row.gathered is None:
        return None
    return {
        "max_density": row.gathered.max_row_density,
        "min_density": row.gathered.min_row_density,
        "mean_density": row.gathered.mean_row_density,
        "var_density": row.gathered.var_row_density,
    }[feature]
