"""Collection-of-pixel detector.

Two passes:

1. Local: every pixel's window is correlated with four zero-mean step
   templates (gradient at 0, 45, 90 and 135 degrees).  Each template is +1 on
   one side of its dividing line, -1 on the other and 0 on the line, scaled by
   the side size, so a response is the difference of the two half-window means.
   A pixel is a candidate when its strongest absolute response exceeds
   ``contrast_threshold``; with ``thin`` set it must also be a local maximum of
   that response across the edge.
2. Global: candidates survive only inside 8-connected chains of at least
   ``min_chain`` pixels.  Single-pixel gaps between chain endpoints that lie two
   steps apart along the edge direction are then bridged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..filters import windows
from ..image_core import as_gray
from .canny import EIGHT, _shifted

# (drow, dcol) across the edge for each template, and along the edge.
ACROSS = {0: (0, 1), 1: (1, 1), 2: (1, 0), 3: (1, -1)}
ALONG = {0: (1, 0), 1: (1, -1), 2: (0, 1), 3: (1, 1)}


@dataclass(frozen=True)
class CopdaConfig:
    window: int = 5
    contrast_threshold: float = 80.0
    min_chain: int = 5
    thin: bool = True

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be odd and >= 3")
        if self.contrast_threshold < 0:
            raise ValueError("contrast_threshold must be non-negative")
        if self.min_chain < 1:
            raise ValueError("min_chain must be >= 1")


def step_templates(window: int) -> np.ndarray:
    """Four ``window`` x ``window`` templates stacked on axis 0."""
    r = np.arange(window) - window // 2
    rows, cols = np.meshgrid(r, r, indexing="ij")
    signs = [np.sign(cols), np.sign(rows + cols), np.sign(rows), np.sign(rows - cols)]
    out = []
    for s in signs:
        s = s.astype(np.float64)
        out.append(s / np.count_nonzero(s > 0))
    return np.stack(out)


def template_responses(img, window: int) -> np.ndarray:
    """Signed responses, shape (4, h, w)."""
    view = windows(as_gray(img), window, window)
    return np.einsum("yxij,dij->dyx", view, step_templates(window))


def local_candidates(img, cfg: CopdaConfig):
    """Candidate mask plus the winning template index per pixel."""
    resp = np.abs(template_responses(img, cfg.window))
    best = resp.argmax(axis=0)
    strength = np.take_along_axis(resp, best[None], axis=0)[0]
    cand = strength > cfg.contrast_threshold
    if cfg.thin:
        peak = np.zeros_like(cand)
        for d, (dr, dc) in ACROSS.items():
            ahead = _shifted(strength, dr, dc)
            behind = _shifted(strength, -dr, -dc)
            peak |= (best == d) & (strength >= behind) & (strength > ahead)
        cand &= peak
    return cand, best


def filter_chains(mask, min_chain: int) -> np.ndarray:
    """Drop 8-connected components with fewer than ``min_chain`` pixels."""
    labels, count = ndimage.label(mask, structure=EIGHT)
    if count == 0:
        return np.zeros(mask.shape, dtype=bool)
    sizes = np.bincount(labels.ravel())
    good = sizes >= min_chain
    good[0] = False
    return good[labels]


def bridge_gaps(mask, direction) -> np.ndarray:
    """Fill the midpoint between an endpoint and a kept pixel two steps along the edge.

    Bridges are found on the input mask and applied together, so the result
    does not depend on scan order.
    """
    mask = np.asarray(mask, dtype=bool)
    counts = ndimage.convolve(mask.astype(np.int32), EIGHT.astype(np.int32), mode="constant") - mask
    endpoint = mask & (counts <= 1)
    fill = np.zeros_like(mask)
    for d, (dr, dc) in ALONG.items():
        ends = endpoint & (direction == d)
        for sign in (1, -1):
            far = _shifted(mask, 2 * sign * dr, 2 * sign * dc)
            mid_free = ~_shifted(mask, sign * dr, sign * dc)
            hit = ends & far & mid_free
            # move the hit to the midpoint position
            fill |= _shifted(hit, -sign * dr, -sign * dc)
    return mask | fill


def copda_detect(img, cfg: CopdaConfig = CopdaConfig()) -> np.ndarray:
    cand, best = local_candidates(img, cfg)
    kept = filter_chains(cand, cfg.min_chain)
    return bridge_gaps(kept, best)
