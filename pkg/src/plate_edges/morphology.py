"""Flat grayscale morphology: windowed mean, dilation, erosion, gradient edges.

A structuring element is a 2-D 0/1 array with odd sides whose center is a
member.  Dilation and erosion both sample ``img[y - i, x - j]`` for member
offsets ``(i, j)`` measured from the center, so an asymmetric element is
reflected the same way in both.
"""

from __future__ import annotations

import numpy as np

from .image_core import as_gray
from .filters import windows


def structuring_element(weights) -> np.ndarray:
    se = np.asarray(weights)
    if se.ndim != 2 or se.shape[0] % 2 == 0 or se.shape[1] % 2 == 0:
        raise ValueError(f"structuring element must have odd sides, got shape {se.shape}")
    if not np.all((se == 0) | (se == 1)):
        raise ValueError("structuring element weights must be 0 or 1")
    se = se.astype(bool)
    if not se[se.shape[0] // 2, se.shape[1] // 2]:
        raise ValueError("structuring element origin must be a member")
    return se


def box_se(a: int = 3, b: int = 3) -> np.ndarray:
    """Full ``a`` x ``b`` element (rows x columns)."""
    return structuring_element(np.ones((a, b), dtype=int))


def cross_se() -> np.ndarray:
    return structuring_element([[0, 1, 0], [1, 1, 1], [0, 1, 0]])


def _member_values(img, se, reflect: bool) -> np.ndarray:
    """Stack of shifted images, one per SE member: shape (members, h, w)."""
    se = structuring_element(se)
    if reflect:
        se = se[::-1, ::-1]
    view = windows(img, *se.shape)
    return np.moveaxis(view[:, :, se], 2, 0)


def smooth_morph(img, se) -> np.ndarray:
    """Mean over SE members, clamped to [0, 255]."""
    return np.clip(_member_values(img, se, reflect=False).mean(axis=0), 0.0, 255.0)


def dilate(img, se) -> np.ndarray:
    return _member_values(img, se, reflect=True).max(axis=0)


def erode(img, se) -> np.ndarray:
    return _member_values(img, se, reflect=True).min(axis=0)


def morph_gradient(img, se) -> np.ndarray:
    gray = as_gray(img)
    return dilate(gray, se) - erode(gray, se)


def morph_gradient_edges(img, se, threshold: float) -> np.ndarray:
    """Edges where ``dilate(img) - erode(img) > threshold``."""
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    return morph_gradient(img, se) > threshold
