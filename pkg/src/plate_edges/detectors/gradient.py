"""First-derivative operators (Sobel, Prewitt, Roberts) and the Laplacian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..filters import convolve
from ..image_core import as_gray
from .otsu import otsu_threshold

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
PREWITT_X = np.array([[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]], dtype=np.float64)
# 2x2 Roberts cross anchored at its top-left cell, embedded in 3x3 so the
# anchor sits on the kernel center.
ROBERTS_A = np.array([[0, 0, 0], [0, 1, 0], [0, 0, -1]], dtype=np.float64)
ROBERTS_B = np.array([[0, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=np.float64)
LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float64)

KERNEL_PAIRS = {
    "sobel": (SOBEL_X, SOBEL_X.T.copy()),
    "prewitt": (PREWITT_X, PREWITT_X.T.copy()),
    "roberts": (ROBERTS_A, ROBERTS_B),
}


@dataclass(frozen=True)
class GradientField:
    gx: np.ndarray
    gy: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.hypot(self.gx, self.gy)

    @property
    def orientation(self) -> np.ndarray:
        """Angle in (-pi, pi]; rows grow downward so positive gy points down."""
        theta = np.arctan2(self.gy, self.gx)
        return np.where(theta == -np.pi, np.pi, theta)


def gradient(img, operator: str = "sobel") -> GradientField:
    try:
        kx, ky = KERNEL_PAIRS[operator]
    except KeyError:
        raise ValueError(f"unknown gradient operator {operator!r}") from None
    gray = as_gray(img)
    return GradientField(convolve(gray, kx), convolve(gray, ky))


def _resolve_threshold(response: np.ndarray, threshold) -> float:
    if threshold is None or threshold == "auto":
        return otsu_threshold(response)
    threshold = float(threshold)
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    return threshold


def gradient_detect(img, operator: str = "sobel", threshold="auto") -> np.ndarray:
    """Mark pixels whose gradient magnitude exceeds ``threshold`` ("auto" = Otsu)."""
    mag = gradient(img, operator).magnitude
    return mag > _resolve_threshold(mag, threshold)


def laplacian_response(img) -> np.ndarray:
    return convolve(img, LAPLACIAN)


def laplacian_detect(img, threshold="auto") -> np.ndarray:
    resp = np.abs(laplacian_response(img))
    return resp > _resolve_threshold(resp, threshold)
