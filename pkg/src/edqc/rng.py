"""Counter-based random streams (SplitMix64 finalizer).

Each diffusion gets its own stream keyed by ``(base_seed, source)``, so the
numbers a source sees never depend on which worker ran it or in what order.
The compiled kernels in :mod:`edqc._kernels` reproduce these exact bits.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, source: int) -> int:
    return mix64(mix64(seed) + ((source + 1) * GOLDEN & MASK64))


class CounterStream:
    """Deterministic stream; draw ``i`` is a pure function of ``(key, i)``."""

    def __init__(self, seed: int, source: int):
        self.key = stream_key(seed, source)
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def uniform(self) -> float:
        """Uniform on (0, 1]; never returns 0."""
        return ((self.next_u64() >> 11) + 1) * _INV53


def uniform_weights(stream: CounterStream, d: int) -> list[float]:
    """``d`` strictly positive weights summing to 1 (i.i.d. uniform, normalized)."""
    if d < 1:
        raise ValueError("need at least one weight")
    raw = [stream.uniform() for _ in range(d)]
    total = 0.0
    for x in raw:  # left-to-right, matching the compiled kernel
        total += x
    return [x / total for x in raw]
