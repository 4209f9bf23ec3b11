"""Counter-based SplitMix64 streams.

Every random draw in the package is ``splitmix64(seed + (index + 1) * GAMMA)``
for an integer ``index``, i.e. the ``index``-th output of a SplitMix64
generator started from ``seed``.  Because each draw depends only on
``(seed, index)`` the results do not depend on iteration order, thread count
or platform.

Constants (all arithmetic modulo 2**64)::

    GAMMA = 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

Uniform doubles take the top 53 bits: ``(z >> 11) * 2**-53``.
"""

from __future__ import annotations

import zlib

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


def draw_u64(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GAMMA)


def u64_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Draws ``offset .. offset+count-1`` of the stream as uint64."""
    seed &= MASK64
    with np.errstate(over="ignore"):
        idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
        z = np.uint64(seed) + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
        z = z ^ (z >> np.uint64(31))
    return z


def uniform_stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Uniform doubles in [0, 1)."""
    z = u64_stream(seed, count, offset)
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def derive_seed(seed: int, label: str) -> int:
    """Independent child seed for a named sub-task (e.g. one plate)."""
    return mix64((seed & MASK64) ^ mix64(zlib.crc32(label.encode("utf-8"))))


class Stream:
    """Sequential view over one counter-based stream (used for layout choices)."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.index = 0

    def next_u64(self) -> int:
        value = draw_u64(self.seed, self.index)
        self.index += 1
        return value

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, low: int, high: int) -> int:
        """Integer in [low, high] inclusive."""
        span = high - low + 1
        return low + int(self.uniform() * span)
