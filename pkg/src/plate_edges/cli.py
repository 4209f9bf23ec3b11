"""Command-line interface: gen, noise, detect, pfom, run, report."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .bench import ConfigError, load_config, read_rows, run_benchmark, write_report
from .bench.config import BenchConfig
from .bench.report import ReportError
from .bench.runner import BenchError
from .detectors import DETECTORS, CannyConfig, CopdaConfig, detect
from .image_core import (
    PnmError,
    edges_to_gray,
    gray_to_edges,
    quantize,
    read_gray,
    write_image,
)
from .metrics import EmptyTruthError, ShapeMismatchError, pfom
from .noise import KINDS, NoiseSpec, add_noise
from .plate_synth import render_plate, write_manifest


def _threshold(value: str):
    return value if value == "auto" else float(value)


def cmd_gen(args) -> int:
    cfg = load_config(args.config) if args.config else BenchConfig()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = cfg.corpus()
    for plate_id, spec in entries:
        img, truth = render_plate(spec)
        write_image(out / f"{plate_id}.pgm", quantize(img))
        write_image(out / f"{plate_id}_truth.pgm", edges_to_gray(truth))
    (out / "manifest.tsv").write_text(write_manifest(entries))
    print(f"wrote {len(entries)} plates to {out}")
    return 0


def cmd_noise(args) -> int:
    img = read_gray(args.input)
    noisy = add_noise(img, NoiseSpec(args.kind, args.level, args.seed))
    write_image(args.output, quantize(noisy))
    return 0


def cmd_detect(args) -> int:
    img = read_gray(args.input)
    canny = CannyConfig(args.sigma, 5, args.high_quantile, args.low_ratio)
    copda = CopdaConfig(args.window, args.contrast_threshold, args.min_chain)
    edges = detect(args.detector, img, threshold=_threshold(args.threshold), canny=canny, copda=copda)
    write_image(args.output, edges_to_gray(edges))
    return 0


def cmd_pfom(args) -> int:
    detected = gray_to_edges(read_gray(args.detected))
    truth = gray_to_edges(read_gray(args.truth))
    print(f"{pfom(detected, truth, args.n).score:.4f}")
    return 0


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    out = Path(args.out_dir)
    changes = {"output_dir": out}
    if args.workers is not None:
        changes["workers"] = args.workers
    cfg = dataclasses.replace(cfg, **changes)
    out.mkdir(parents=True, exist_ok=True)
    rows = run_benchmark(cfg)
    (out / "report.csv").write_bytes(write_report(rows, "csv"))
    (out / "report.md").write_bytes(write_report(rows, "markdown"))
    print(f"{len(rows)} rows written to {out / 'report.csv'}")
    return 0


def cmd_report(args) -> int:
    rows = read_rows(Path(args.rows).read_text())
    sys.stdout.write(write_report(rows, args.format).decode())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plate-edges", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="render a synthetic plate corpus")
    p.add_argument("--config", help="benchmark config (corpus keys are used)")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("noise", help="corrupt one image")
    p.add_argument("--kind", choices=KINDS, default="impulse")
    p.add_argument("--level", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("detect", help="run one edge detector")
    p.add_argument("--detector", choices=DETECTORS, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--threshold", default="auto", help="sobel/prewitt/roberts/laplacian/morph")
    p.add_argument("--sigma", type=float, default=1.4, help="canny Gaussian sigma")
    p.add_argument("--high-quantile", type=float, default=0.90)
    p.add_argument("--low-ratio", type=float, default=0.4)
    p.add_argument("--window", type=int, default=CopdaConfig.window, help="copda window")
    p.add_argument("--contrast-threshold", type=float, default=CopdaConfig.contrast_threshold)
    p.add_argument("--min-chain", type=int, default=CopdaConfig.min_chain)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("pfom", help="score a detected edge map against ground truth")
    p.add_argument("--detected", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--n", type=float, default=1.0 / 9.0)
    p.set_defaults(func=cmd_pfom)

    p = sub.add_parser("run", help="run a benchmark config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="render a report from a rows CSV")
    p.add_argument("--rows", required=True)
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, PnmError, ConfigError, BenchError, ReportError, EmptyTruthError,
            ShapeMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
