"""Pratt Figure of Merit with an exact Euclidean distance transform."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image_core import as_edges

DEFAULT_SCALE = 1.0 / 9.0


class EmptyTruthError(ValueError):
    """The ground-truth map has no edge pixels, so the metric is undefined."""


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class PfomResult:
    score: float
    k_actual: int
    k_detected: int
    n: float = DEFAULT_SCALE


def _column_distances(truth: np.ndarray) -> np.ndarray:
    """Per-column distance (in rows) to the nearest truth pixel; inf if none."""
    h, w = truth.shape
    inf = np.inf
    g = np.full((h, w), inf)
    run = np.full(w, inf)
    for y in range(h):
        run = np.where(truth[y], 0.0, run + 1.0)
        g[y] = run
    run = np.full(w, inf)
    for y in range(h - 1, -1, -1):
        run = np.where(truth[y], 0.0, run + 1.0)
        g[y] = np.minimum(g[y], run)
    return g


def squared_distance_transform(truth) -> np.ndarray:
    """Exact squared Euclidean distance from every pixel to the nearest truth pixel.

    First pass: vertical distance within each column.  Second pass: for each
    row, ``d2[y, x] = min_j (x - j)**2 + g[y, j]**2``, evaluated exactly over all
    columns ``j``.  Squared distances of integer offsets are exact in float64.
    """
    truth = as_edges(truth)
    if not truth.any():
        raise EmptyTruthError("ground truth has no edge pixels")
    g2 = _column_distances(truth) ** 2
    h, w = truth.shape
    cols = np.arange(w, dtype=np.float64)
    dx2 = (cols[:, None] - cols[None, :]) ** 2  # [x, j]
    out = np.empty((h, w))
    chunk = max(1, (1 << 22) // (w * w))
    for y0 in range(0, h, chunk):
        block = g2[y0:y0 + chunk]  # [y, j]
        out[y0:y0 + chunk] = (block[:, None, :] + dx2[None, :, :]).min(axis=2)
    return out


def distance_transform(truth) -> np.ndarray:
    return np.sqrt(squared_distance_transform(truth))


def nearest_edge_distance_oracle(p, truth) -> float:
    """Exhaustive minimum Euclidean distance from ``p = (row, col)`` to a truth pixel."""
    truth = as_edges(truth)
    ys, xs = np.nonzero(truth)
    if ys.size == 0:
        raise EmptyTruthError("ground truth has no edge pixels")
    py, px = p
    best = math.inf
    for y, x in zip(ys.tolist(), xs.tolist()):
        best = min(best, math.hypot(py - y, px - x))
    return best


def pfom_from_distance(detected, sq_dist, k_actual: int, n: float = DEFAULT_SCALE) -> PfomResult:
    """Score ``detected`` against a precomputed squared distance map."""
    detected = as_edges(detected)
    if detected.shape != sq_dist.shape:
        raise ShapeMismatchError(f"shape mismatch: {detected.shape} vs {sq_dist.shape}")
    k_detected = int(detected.sum())
    if k_detected == 0:
        return PfomResult(0.0, k_actual, 0, n)
    total = float(np.sum(1.0 / (1.0 + n * sq_dist[detected])))
    score = min(1.0, total / max(k_actual, k_detected))
    return PfomResult(score, k_actual, k_detected, n)


def pfom(detected, truth, n: float = DEFAULT_SCALE) -> PfomResult:
    """``(1 / max(k_I, k_A)) * sum_p 1 / (1 + n l(p)^2)`` over detected pixels ``p``.

    ``l(p)`` is the Euclidean distance from ``p`` to the nearest truth pixel.
    An empty detection scores 0.
    """
    detected = as_edges(detected)
    truth = as_edges(truth)
    if detected.shape != truth.shape:
        raise ShapeMismatchError(f"shape mismatch: {detected.shape} vs {truth.shape}")
    if n < 0:
        raise ValueError("scaling constant must be non-negative")
    sq = squared_distance_transform(truth)
    return pfom_from_distance(detected, sq, int(truth.sum()), n)
