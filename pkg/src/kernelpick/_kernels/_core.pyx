# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernels over CSR row offsets.

Integer aggregates only; the callers apply the floating-point epilogue, so
this backend and the numpy fallback are interchangeable bit for bit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def length_stats(row_offsets):
    """(min, max, sum, sum of squares) of per-row entry counts."""
    cdef cnp.int64_t[::1] off = np.ascontiguousarray(row_offsets, dtype=np.int64)
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef cnp.int64_t lo, hi, s1 = 0, s2 = 0, ln
    cdef Py_ssize_t i
    if n <= 0:
        return 0, 0, 0, 0
    lo = off[1] - off[0]
    hi = lo
    for i in range(n):
        ln = off[i + 1] - off[i]
        if ln < lo:
            lo = ln
        if ln > hi:
            hi = ln
        s1 += ln
        s2 += ln * ln
    return int(lo), int(hi), int(s1), int(s2)


def wave_ceil_max_sum(row_offsets, divisor, wave_rows):
    """Sum over waves of max(ceil(row_length / divisor)) within each wave."""
    cdef cnp.int64_t[::1] off = np.ascontiguousarray(row_offsets, dtype=np.int64)
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef cnp.int64_t div = divisor, wave = wave_rows
    cdef cnp.int64_t total = 0, wave_max = 0, units
    cdef Py_ssize_t i, in_wave = 0
    if n <= 0:
        return 0
    for i in range(n):
        units = (off[i + 1] - off[i] + div - 1) // div
        if units > wave_max:
            wave_max = units
        in_wave += 1
        if in_wave == wave:
            total += wave_max
            wave_max = 0
            in_wave = 0
    if in_wave:
        total += wave_max
    return int(total)
