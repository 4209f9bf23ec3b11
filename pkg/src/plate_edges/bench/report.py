"""CSV and markdown reports."""

from __future__ import annotations

import csv
import io

import numpy as np

from .runner import ReportRow

CSV_HEADER = "plate_id,detector,noise_kind,level,seed,pfom,k_actual,k_detected,wall_time_ms"

DETECTOR_LABELS = {
    "prewitt": ("Prewitt Edge Detection Algorithm", "Single Value Pixel-based approach"),
    "roberts": ("Roberts Edge Detection Algorithm", "Single Value Pixel-based approach"),
    "canny": ("Canny Edge Detection Algorithm", "Single Value Pixel-based approach"),
    "laplacian": ("Laplacian Edge Detection Algorithm", "Single Value Pixel-based approach"),
    "sobel": ("Sobel Edge Detection Algorithm", "Single Value Pixel-based approach"),
    "morph": ("Morphological Gradient Edge Detection", "Single Value Pixel-based approach"),
    "copda": ("Collection-of-Pixel Edge Detection", "Collection of pixel-based approach"),
}
DETECTOR_ORDER = ("prewitt", "roberts", "canny", "laplacian", "sobel", "morph", "copda")


class ReportError(ValueError):
    pass


def format_csv_row(r: ReportRow) -> str:
    return (f"{r.plate_id},{r.detector},{r.noise_kind},{r.level:.2f},{r.seed},"
            f"{r.pfom_score:.4f},{r.k_actual},{r.k_detected},{r.wall_time_ms:.3f}")


def level_heading(level: float) -> str:
    if level == 0:
        return "Image without noise"
    return f"Image with noise ({level * 100:g}%)"


def write_report(rows, fmt: str = "csv") -> bytes:
    rows = list(rows)
    if not rows:
        raise ReportError("no rows to report")
    if fmt == "csv":
        lines = [CSV_HEADER] + [format_csv_row(r) for r in rows]
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt == "markdown":
        return _markdown(rows).encode("utf-8")
    raise ReportError(f"unknown report format {fmt!r}; expected csv or markdown")


def _markdown(rows) -> str:
    levels = sorted({r.level for r in rows})
    present = {r.detector for r in rows}
    detectors = [d for d in DETECTOR_ORDER if d in present] + sorted(present - set(DETECTOR_ORDER))
    cells: dict = {}
    for r in rows:
        cells.setdefault((r.detector, r.level), []).append(r.pfom_score)
    plates = len({r.plate_id for r in rows})
    seeds = len({r.seed for r in rows})
    kinds = ", ".join(sorted({r.noise_kind for r in rows}))

    head = ["Edge Detection", "Type"] + [level_heading(lv) for lv in levels]
    out = [
        f"Mean PFOM over {plates} plate(s) x {seeds} seed(s); noise: {kinds}",
        "",
        "| " + " | ".join(head) + " |",
        "|" + "|".join("---" for _ in head) + "|",
    ]
    for d in detectors:
        name, kind = DETECTOR_LABELS.get(d, (d, ""))
        vals = []
        for lv in levels:
            v = cells.get((d, lv))
            vals.append(f"{np.mean(v):.4f}" if v else "")
        out.append("| " + " | ".join([name, kind] + vals) + " |")
    return "\n".join(out) + "\n"


def read_rows(text: str) -> list[ReportRow]:
    """Parse a CSV produced by :func:`write_report`."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ReportError("empty CSV") from None
    if ",".join(header) != CSV_HEADER:
        raise ReportError("unexpected CSV header")
    rows = []
    for rec in reader:
        if not rec:
            continue
        if len(rec) != 9:
            raise ReportError(f"bad CSV record: {rec}")
        rows.append(ReportRow(rec[0], rec[1], rec[2], float(rec[3]), int(rec[4]), float(rec[5]),
                              int(rec[6]), int(rec[7]), float(rec[8])))
    return rows
