"""Canny detector: Gaussian smoothing, Sobel gradient, NMS, hysteresis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..filters import convolve
from ..image_core import as_gray
from .gradient import gradient

EIGHT = np.ones((3, 3), dtype=bool)

# Along-gradient neighbor offsets (drow, dcol) per snapped bin.  Rows grow
# downward, so a 45 degree gradient (gx > 0, gy > 0) points down-right.
BIN_OFFSETS = {0: (0, 1), 1: (1, 1), 2: (1, 0), 3: (1, -1)}


@dataclass(frozen=True)
class CannyConfig:
    gauss_sigma: float = 1.4
    gauss_size: int = 5
    high_quantile: float = 0.90
    low_ratio: float = 0.4

    def __post_init__(self):
        if self.gauss_sigma <= 0:
            raise ValueError("gauss_sigma must be positive")
        if self.gauss_size < 1 or self.gauss_size % 2 == 0:
            raise ValueError("gauss_size must be odd")
        if not 0 < self.high_quantile < 1:
            raise ValueError("high_quantile must be in (0, 1)")
        if not 0 < self.low_ratio < 1:
            raise ValueError("low_ratio must be in (0, 1)")


def gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    r = np.arange(size) - size // 2
    k = np.exp(-(r[:, None] ** 2 + r[None, :] ** 2) / (2.0 * sigma ** 2))
    return k / k.sum()


def orientation_bins(gx, gy) -> np.ndarray:
    """Snap gradient direction to 0, 45, 90, 135 degrees (bins 0..3)."""
    deg = np.degrees(np.arctan2(gy, gx)) % 180.0
    return (np.floor((deg + 22.5) / 45.0).astype(int)) % 4


def _shifted(arr: np.ndarray, dr: int, dc: int) -> np.ndarray:
    """``out[y, x] = arr[y + dr, x + dc]``, zero outside the image."""
    h, w = arr.shape
    out = np.zeros_like(arr)
    ys = slice(max(0, -dr), min(h, h - dr))
    xs = slice(max(0, -dc), min(w, w - dc))
    yd = slice(max(0, dr), min(h, h + dr))
    xd = slice(max(0, dc), min(w, w + dc))
    out[ys, xs] = arr[yd, xd]
    return out


def non_maximum_suppression(mag, bins, rtol: float = 1e-9) -> np.ndarray:
    """Keep pixels with ``mag >= behind`` and ``mag > ahead`` along their bin.

    The asymmetric comparison keeps exactly one pixel of a two-pixel plateau,
    which is what a step edge between pixel centers produces.  Values closer
    than ``rtol * max(mag)`` count as equal so summation-order noise cannot
    flip the choice.
    """
    eps = rtol * float(mag.max()) if mag.size else 0.0
    keep = np.zeros(mag.shape, dtype=bool)
    for b, (dr, dc) in BIN_OFFSETS.items():
        ahead = _shifted(mag, dr, dc)
        behind = _shifted(mag, -dr, -dc)
        sel = (bins == b) & (mag > eps) & (mag >= behind - eps) & (mag > ahead + eps)
        keep |= sel
    return np.where(keep, mag, 0.0)


def hysteresis(strength, low: float, high: float, rtol: float = 1e-9) -> np.ndarray:
    """Pixels ``>= low`` that are 8-connected to a pixel ``>= high``.

    Thresholds are relaxed by ``rtol`` so values equal to a quantile up to
    rounding are not split across the boundary.
    """
    weak = (strength > 0) & (strength >= low * (1.0 - rtol))
    strong = strength >= high * (1.0 - rtol)
    labels, count = ndimage.label(weak, structure=EIGHT)
    if count == 0:
        return np.zeros(strength.shape, dtype=bool)
    good = np.zeros(count + 1, dtype=bool)
    good[np.unique(labels[strong & weak])] = True
    good[0] = False
    return good[labels]


def canny_detect(img, cfg: CannyConfig = CannyConfig()) -> np.ndarray:
    gray = as_gray(img)
    smoothed = convolve(gray, gaussian_kernel(cfg.gauss_size, cfg.gauss_sigma))
    field = gradient(smoothed, "sobel")
    mag = field.magnitude
    # smoothing leaves float dust on flat regions
    mag[mag < 1e-9 * max(1.0, float(np.abs(gray).max()))] = 0.0
    thin = non_maximum_suppression(mag, orientation_bins(field.gx, field.gy))
    nonzero = thin[thin > 0]
    if nonzero.size == 0:
        return np.zeros(gray.shape, dtype=bool)
    high = float(np.quantile(nonzero, cfg.high_quantile))
    return hysteresis(thin, cfg.low_ratio * high, high)
