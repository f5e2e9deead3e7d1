"""numpy fallback for the compiled reduction kernels.

Both backends return exact integer aggregates over CSR row offsets; all
floating-point arithmetic happens afterwards in the shared callers. Integer
sums are order-insensitive, so the two backends agree bit for bit.
"""

import numpy as np


def length_stats(row_offsets: np.ndarray) -> tuple[int, int, int, int]:
    """(min, max, sum, sum of squares) of per-row entry counts."""
    lengths = np.diff(row_offsets)
    if lengths.size == 0:
        return 0, 0, 0, 0
    return (
        int(lengths.min()),
        int(lengths.max()),
        int(lengths.sum()),
        int(np.dot(lengths, lengths)),
    )


def wave_ceil_max_sum(row_offsets: np.ndarray, divisor: int, wave_rows: int) -> int:
    """Sum over waves of max(ceil(row_length / divisor)) within each wave.

    Rows are grouped `wave_rows` at a time in order; a trailing partial wave
    counts like a full one.
    """
    lengths = np.diff(row_offsets)
    n = lengths.size
    if n == 0:
        return 0
    units = -(-lengths // divisor)
    pad = (-n) % wave_rows
    if pad:
        units = np.concatenate([units, np.zeros(pad, dtype=units.dtype)])
    return int(units.reshape(-1, wave_rows).max(axis=1).sum())
