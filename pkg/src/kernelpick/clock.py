"""Injectable time sources.

Every elapsed-time measurement in the package goes through a clock callable
(no direct time.* calls in library code), so tests and the --fixed-clock CLI
flag can pin timings to deterministic values.
"""

import time


def perf_clock() -> float:
    """Default wall-clock source."""
    return time.perf_counter()


class FixedClock:
    """Deterministic clock: every call advances by a fixed tick.

    Any duration measured as the difference of two consecutive reads is
    exactly `tick`, which makes timing-bearing outputs byte-reproducible.
    """

    def __init__(self, start: float = 0.0, tick: float = 1e-7):
        self._now = start
        self.tick = tick

    def __call__(self) -> float:
        self._now += self.tick
        return self._now
