"""Seeded impulse (salt & pepper) and speckle noise.

Pixel ``k`` in row-major order uses draw ``k`` of the SplitMix64 stream for
the seed (see :mod:`plate_edges.rng`), so the corruption pattern is a pure
function of ``(seed, image shape)``.  Because impulse noise corrupts pixel
``k`` when ``u_k < level``, the pixels hit at a lower level are a subset of
those hit at a higher level for the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image_core import as_gray
from .rng import MASK64, uniform_stream

KINDS = ("impulse", "speckle")


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    level: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {KINDS}")
        if not 0.0 <= self.level <= 1.0:
            raise ValueError(f"noise level must be in [0, 1], got {self.level}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _check(spec: NoiseSpec, kind: str):
    if spec.kind != kind:
        raise ValueError(f"expected a {kind} spec, got {spec.kind!r}")
    if not 0.0 <= spec.level <= 1.0:
        raise ValueError(f"noise level must be in [0, 1], got {spec.level}")


def add_impulse(img, spec: NoiseSpec) -> np.ndarray:
    """Replace each pixel with probability ``level`` by 0 or 255 (50/50)."""
    _check(spec, "impulse")
    gray = as_gray(img)
    out = gray.copy()
    if spec.level == 0.0:
        return out
    u = uniform_stream(spec.seed, gray.size).reshape(gray.shape)
    out[u < spec.level / 2.0] = 0.0
    out[(u >= spec.level / 2.0) & (u < spec.level)] = 255.0
    return out


def speckle_unclamped(img, spec: NoiseSpec) -> np.ndarray:
    """``g + g*u`` before clamping; u uniform on [-sqrt(3 level), sqrt(3 level)]."""
    _check(spec, "speckle")
    gray = as_gray(img)
    if spec.level == 0.0:
        return gray.copy()
    half_width = math.sqrt(3.0 * spec.level)
    u = uniform_stream(spec.seed, gray.size).reshape(gray.shape)
    u = (2.0 * u - 1.0) * half_width
    return gray + gray * u


def add_speckle(img, spec: NoiseSpec) -> np.ndarray:
    """Multiplicative uniform noise with variance ``level``, clamped to [0, 255]."""
    return np.clip(speckle_unclamped(img, spec), 0.0, 255.0)


def add_noise(img, spec: NoiseSpec) -> np.ndarray:
    if spec.kind == "impulse":
        return add_impulse(img, spec)
    return add_speckle(img, spec)
