"""Correlation engine, averaging and median filters, power-law enhancement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image_core import as_gray


def as_kernel(weights) -> np.ndarray:
    k = np.asarray(weights, dtype=np.float64)
    if k.ndim != 2 or k.shape[0] % 2 == 0 or k.shape[1] % 2 == 0:
        raise ValueError(f"kernel must be 2-D with odd sides, got shape {k.shape}")
    return k


def convolve(img, kernel) -> np.ndarray:
    """Correlate ``img`` with an odd-sized ``kernel`` using replicate padding.

    ``out[y, x] = sum_{i,j} k[i, j] * img[y + i - kh//2, x + j - kw//2]``.
    The output is not clamped.
    """
    gray = as_gray(img)
    k = as_kernel(kernel)
    kh, kw = k.shape
    py, px = kh // 2, kw // 2
    padded = np.pad(gray, ((py, py), (px, px)), mode="edge")
    h, w = gray.shape
    out = np.zeros_like(gray)
    for i in range(kh):
        for j in range(kw):
            if k[i, j] != 0.0:
                out += k[i, j] * padded[i:i + h, j:j + w]
    return out


def box_average(img) -> np.ndarray:
    """3x3 mean filter (sum of the window divided by 9), clamped to [0, 255]."""
    return np.clip(convolve(img, np.ones((3, 3))) / 9.0, 0.0, 255.0)


def windows(img, height: int, width: int) -> np.ndarray:
    """Replicate-padded ``(h, w, height, width)`` neighborhood view."""
    gray = as_gray(img)
    padded = np.pad(gray, ((height // 2, height // 2), (width // 2, width // 2)), mode="edge")
    return sliding_window_view(padded, (height, width))


def median_filter(img, window: int = 3) -> np.ndarray:
    if window < 3 or window % 2 == 0:
        raise ValueError(f"median window must be odd and >= 3, got {window}")
    view = windows(img, window, window)
    return np.median(view.reshape(view.shape[0], view.shape[1], -1), axis=2)


@dataclass(frozen=True)
class EnhanceConfig:
    m: float = 1.0
    sigma: float = 0.2

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def enhance_power(img, cfg: EnhanceConfig = EnhanceConfig()) -> np.ndarray:
    """``255 * m * (g / 255) ** sigma``, clamped to [0, 255]."""
    if cfg.sigma <= 0:
        raise ValueError(f"sigma must be positive, got {cfg.sigma}")
    gray = np.clip(as_gray(img), 0.0, 255.0) / 255.0
    return np.clip(cfg.m * gray ** cfg.sigma * 255.0, 0.0, 255.0)
