"""Reduction kernels over CSR row offsets: compiled core with numpy fallback.

The compiled extension is used when it was built; otherwise the numpy
implementations take over transparently. Set KERNELPICK_PURE_KERNELS=1 to
force the fallback (used by the backend benchmark and parity tests). Both
backends return identical integer aggregates.
"""

import os

from . import _pure

if os.environ.get("KERNELPICK_PURE_KERNELS"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

length_stats = _impl.length_stats
wave_ceil_max_sum = _impl.wave_ceil_max_sum

__all__ = ["BACKEND", "length_stats", "wave_ceil_max_sum"]
