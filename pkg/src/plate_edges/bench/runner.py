"""Benchmark runner: corrupt, reconstruct, enhance, detect, score."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..detectors import detect
from ..filters import box_average, enhance_power, median_filter
from ..image_core import edges_to_gray, read_gray, save_pnm, gray_to_edges
from ..metrics import pfom_from_distance, squared_distance_transform
from ..noise import NoiseSpec, add_noise
from ..plate_synth import render_plate
from ..rng import derive_seed
from .config import BenchConfig, FileItem


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReportRow:
    plate_id: str
    detector: str
    noise_kind: str
    level: float
    seed: int
    pfom_score: float
    k_actual: int
    k_detected: int
    wall_time_ms: float

    def __post_init__(self):
        if not 0.0 <= self.pfom_score <= 1.0:
            raise ValueError(f"pfom score {self.pfom_score} outside [0, 1]")

    @property
    def key(self):
        return (self.plate_id, self.detector, self.level, self.seed)


def load_item(item):
    """``(plate_id, image, truth)`` for a synthetic spec pair or a FileItem."""
    if isinstance(item, FileItem):
        try:
            img = read_gray(item.image)
            truth = gray_to_edges(read_gray(item.truth))
        except OSError as exc:
            raise BenchError(f"cannot read input for {item.plate_id}: {exc}") from exc
        if img.shape != truth.shape:
            raise BenchError(f"{item.plate_id}: image {img.shape} and truth {truth.shape} differ")
        return item.plate_id, img, truth
    plate_id, spec = item
    img, truth = render_plate(spec)
    return plate_id, img, truth


def preprocess(img, cfg: BenchConfig):
    """Smoothing stages, then enhancement, in fixed order."""
    out = img
    if "median" in cfg.preprocess:
        out = median_filter(out, cfg.median_window)
    if "box_average" in cfg.preprocess:
        out = box_average(out)
    if "enhance" in cfg.preprocess:
        out = enhance_power(out, cfg.enhance)
    return out


def noise_seed(seed: int, plate_id: str) -> int:
    """Per-plate noise seed; independent of level and detector so that all
    detectors see the same corrupted image and higher levels corrupt a
    superset of the pixels hit at lower levels."""
    return derive_seed(seed, plate_id)


def edge_filename(plate_id, detector, level, seed) -> str:
    return f"{plate_id}_{detector}_{level:.2f}_{seed}.pgm"


def _run_item(args):
    item, cfg, detector_fn = args
    plate_id, img, truth = load_item(item)
    sq = squared_distance_transform(truth)
    k_actual = int(truth.sum())
    rows, dumps = [], []
    for level in sorted(set(cfg.levels)):
        for seed in cfg.seeds:
            noisy = img if level == 0 else add_noise(img, NoiseSpec(cfg.noise_kind, level, noise_seed(seed, plate_id)))
            ready = preprocess(noisy, cfg)
            for det in cfg.detectors:
                t0 = time.perf_counter()
                edges = detector_fn(det, ready, cfg) if detector_fn else _detect(det, ready, cfg)
                elapsed = (time.perf_counter() - t0) * 1000.0 if cfg.timing else 0.0
                res = pfom_from_distance(edges, sq, k_actual)
                rows.append(ReportRow(plate_id, det, cfg.noise_kind, level, seed, res.score,
                                      res.k_actual, res.k_detected, elapsed))
                if cfg.dump_edges:
                    dumps.append((edge_filename(plate_id, det, level, seed), save_pnm(edges_to_gray(edges))))
    return rows, dumps


def _detect(name, img, cfg: BenchConfig):
    return detect(name, img, threshold=cfg.threshold, canny=cfg.canny, copda=cfg.copda)


def run_benchmark(cfg: BenchConfig, detector_fn=None) -> list[ReportRow]:
    """Run every (plate, detector, level, seed) combination.

    ``detector_fn(name, image, cfg)`` overrides detection (test hook).  With
    ``workers > 1`` plates are processed in separate processes; results are
    identical to a serial run.
    """
    items = cfg.corpus()
    if not items:
        raise BenchError("corpus is empty")
    tasks = [(item, cfg, detector_fn) for item in items]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_item, tasks))
    else:
        results = [_run_item(t) for t in tasks]

    rows = [r for res, _ in results for r in res]
    rows.sort(key=lambda r: r.key)
    keys = [r.key for r in rows]
    if len(set(keys)) != len(keys):
        raise BenchError("duplicate (plate, detector, level, seed) rows; plate ids must be unique")

    if cfg.dump_edges and cfg.output_dir is not None:
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for _, dumps in results:
            for name, data in dumps:
                (out / name).write_bytes(data)
    return rows


def mean_scores(rows) -> dict:
    """``{(detector, level): mean pfom}`` over plates and seeds."""
    acc: dict = {}
    for r in rows:
        acc.setdefault((r.detector, r.level), []).append(r.pfom_score)
    return {k: float(np.mean(v)) for k, v in acc.items()}
