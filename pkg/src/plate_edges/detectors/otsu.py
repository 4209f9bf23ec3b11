"""Otsu threshold over a 256-bin histogram of non-negative values."""

from __future__ import annotations

import numpy as np

NBINS = 256


def histogram_bins(values, top: float) -> np.ndarray:
    """Bin index per value for 256 right-closed bins over [0, top].

    Bin 0 is ``[0, top/256]``; bin ``k > 0`` is ``(k*top/256, (k+1)*top/256]``,
    so a value lands in bin ``<= k`` exactly when ``value <= (k+1)*top/256``.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    edges = np.arange(1, NBINS + 1) * (top / NBINS)
    idx = np.searchsorted(edges, v, side="left")
    return np.minimum(idx, NBINS - 1)


def threshold_for_bin(k: int, top: float) -> float:
    return (k + 1) * (top / NBINS)


def otsu_threshold(values) -> float:
    """Threshold maximizing inter-class variance; classes are ``<= t`` and ``> t``.

    Candidates are the 256 upper bin edges.  Ties go to the lowest bin.  Class
    sums use integer bin counts and doubled bin centers ``2k + 1`` so the score
    is computed without accumulated rounding.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValueError("otsu_threshold needs at least one value")
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise ValueError("otsu_threshold expects finite non-negative values")
    lo, hi = float(v.min()), float(v.max())
    if lo == hi:
        return hi
    counts = np.bincount(histogram_bins(v, hi), minlength=NBINS).astype(np.int64)
    centers2 = 2 * np.arange(NBINS, dtype=np.int64) + 1
    n0 = np.cumsum(counts)
    s0 = np.cumsum(counts * centers2)
    n1 = n0[-1] - n0
    s1 = s0[-1] - s0
    score = np.zeros(NBINS)
    ok = (n0 > 0) & (n1 > 0)
    mu0 = s0[ok] / n0[ok]
    mu1 = s1[ok] / n1[ok]
    score[ok] = n0[ok].astype(np.float64) * n1[ok].astype(np.float64) * (mu0 - mu1) ** 2
    return threshold_for_bin(int(np.argmax(score)), hi)
