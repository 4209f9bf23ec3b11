"""One-shot grid search for the collection-of-pixel detector parameters."""

from __future__ import annotations

import dataclasses
import itertools

from ..detectors import CopdaConfig
from .config import BenchConfig
from .runner import mean_scores, run_benchmark

WINDOWS = (3, 5, 7)
CONTRASTS = (10.0, 20.0, 30.0, 40.0, 60.0, 80.0, 100.0, 120.0)
MIN_CHAINS = (3, 5, 10, 20)


def tune_copda(base: BenchConfig, level: float, windows=WINDOWS, contrasts=CONTRASTS,
               min_chains=MIN_CHAINS) -> tuple[CopdaConfig, float]:
    """Return the grid point with the best mean PFOM at ``level`` on ``base``'s corpus.

    Ties keep the first point in (window, contrast, min_chain) grid order.
    """
    base = dataclasses.replace(base, detectors=("copda",), levels=(level,), timing=False,
                               dump_edges=False)
    best, best_score = None, -1.0
    for w, th, mc in itertools.product(windows, contrasts, min_chains):
        cfg = dataclasses.replace(base, copda=dataclasses.replace(
            base.copda, window=w, contrast_threshold=th, min_chain=mc))
        score = mean_scores(run_benchmark(cfg))[("copda", level)]
        if score > best_score:
            best, best_score = cfg.copda, score
    return best, best_score
