"""Synthetic number plates with exact ground-truth edges.

A plate is a light background with a dark border frame and a row of glyphs
drawn from a 5x7 block font, each font cell scaled to an ``s`` x ``s`` pixel
square.  Everything is axis-aligned, so the ground truth is exact: an edge
pixel is a dark (ink) pixel of the noiseless rendering with at least one
4-neighbor of a different intensity.  Each physical boundary is therefore
marked once, on its ink side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import MASK64, Stream

STYLES = ("clean", "dirty", "faded")
FADE_FACTOR = 0.35
BLOTCH_AREA_CAP = 0.10

FONT = {
    "0": ["01110", "10001", "10011", "10101", "11001", "10001", "01110"],
    "1": ["00100", "01100", "00100", "00100", "00100", "00100", "01110"],
    "2": ["01110", "10001", "00001", "00010", "00100", "01000", "11111"],
    "3": ["11110", "00001", "00001", "01110", "00001", "00001", "11110"],
    "4": ["00010", "00110", "01010", "10010", "11111", "00010", "00010"],
    "5": ["11111", "10000", "11110", "00001", "00001", "10001", "01110"],
    "6": ["00110", "01000", "10000", "11110", "10001", "10001", "01110"],
    "7": ["11111", "00001", "00010", "00100", "01000", "01000", "01000"],
    "8": ["01110", "10001", "10001", "01110", "10001", "10001", "01110"],
    "9": ["01110", "10001", "10001", "01111", "00001", "00010", "01100"],
    "A": ["01110", "10001", "10001", "11111", "10001", "10001", "10001"],
    "B": ["11110", "10001", "10001", "11110", "10001", "10001", "11110"],
    "C": ["01110", "10001", "10000", "10000", "10000", "10001", "01110"],
    "D": ["11100", "10010", "10001", "10001", "10001", "10010", "11100"],
    "E": ["11111", "10000", "10000", "11110", "10000", "10000", "11111"],
    "F": ["11111", "10000", "10000", "11110", "10000", "10000", "10000"],
    "G": ["01110", "10001", "10000", "10111", "10001", "10001", "01111"],
    "H": ["10001", "10001", "10001", "11111", "10001", "10001", "10001"],
    "I": ["01110", "00100", "00100", "00100", "00100", "00100", "01110"],
    "J": ["00111", "00010", "00010", "00010", "00010", "10010", "01100"],
    "K": ["10001", "10010", "10100", "11000", "10100", "10010", "10001"],
    "L": ["10000", "10000", "10000", "10000", "10000", "10000", "11111"],
    "M": ["10001", "11011", "10101", "10101", "10001", "10001", "10001"],
    "N": ["10001", "10001", "11001", "10101", "10011", "10001", "10001"],
    "O": ["01110", "10001", "10001", "10001", "10001", "10001", "01110"],
    "P": ["11110", "10001", "10001", "11110", "10000", "10000", "10000"],
    "Q": ["01110", "10001", "10001", "10001", "10101", "10010", "01101"],
    "R": ["11110", "10001", "10001", "11110", "10100", "10010", "10001"],
    "S": ["01111", "10000", "10000", "01110", "00001", "00001", "11110"],
    "T": ["11111", "00100", "00100", "00100", "00100", "00100", "00100"],
    "U": ["10001", "10001", "10001", "10001", "10001", "10001", "01110"],
    "V": ["10001", "10001", "10001", "10001", "10001", "01010", "00100"],
    "W": ["10001", "10001", "10001", "10101", "10101", "10101", "01010"],
    "X": ["10001", "10001", "01010", "00100", "01010", "10001", "10001"],
    "Y": ["10001", "10001", "01010", "00100", "00100", "00100", "00100"],
    "Z": ["11111", "00001", "00010", "00100", "01000", "10000", "11111"],
    "-": ["00000", "00000", "00000", "11111", "00000", "00000", "00000"],
    " ": ["00000"] * 7,
}
GLYPHS = "".join(sorted(FONT))
LETTERS = "ABCDEFGHJKLMNPRSTUVWXYZ"
DIGITS = "0123456789"


class UnsupportedGlyphError(ValueError):
    pass


@dataclass(frozen=True)
class PlateSpec:
    text: str
    style: str = "clean"
    seed: int = 0
    width: int = 240
    height: int = 80
    foreground: float = 20.0
    background: float = 230.0

    def __post_init__(self):
        if not self.text:
            raise ValueError("plate text must be non-empty")
        bad = sorted(set(c for c in self.text if c not in FONT))
        if bad:
            raise UnsupportedGlyphError(f"unsupported glyphs: {''.join(bad)!r}")
        if self.style not in STYLES:
            raise ValueError(f"unknown plate style {self.style!r}; expected one of {STYLES}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("plate dimensions must be positive")
        if 3 * self.width < 4 * self.height:
            raise ValueError("plate width must be at least 4/3 of its height")
        for v in (self.foreground, self.background):
            if not 0 <= v <= 255:
                raise ValueError("intensities must lie in [0, 255]")
        if self.foreground == self.background:
            raise ValueError("foreground and background must differ")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def fields(self) -> str:
        """Manifest encoding: space-separated key=value pairs."""
        return (f"text={self.text.replace(' ', '_')} style={self.style} seed={self.seed} "
                f"width={self.width} height={self.height} "
                f"foreground={self.foreground:g} background={self.background:g}")

    @classmethod
    def from_fields(cls, fields: str) -> "PlateSpec":
        kv = dict(item.split("=", 1) for item in fields.split())
        return cls(text=kv["text"].replace("_", " "), style=kv["style"], seed=int(kv["seed"]),
                   width=int(kv["width"]), height=int(kv["height"]),
                   foreground=float(kv["foreground"]), background=float(kv["background"]))


def layout(spec: PlateSpec) -> tuple[int, int, int, int]:
    """Cell size, frame thickness, glyph origin (row, col)."""
    n = len(spec.text)
    frame = max(1, spec.height // 16)
    margin = 3 * frame + 1
    inner_h = spec.height - 2 * margin
    inner_w = spec.width - 2 * margin
    cell = min(inner_h // 7, inner_w // (6 * n - 1))
    if cell < 1:
        raise ValueError(f"plate {spec.width}x{spec.height} too small for {n} glyphs")
    text_h, text_w = 7 * cell, (6 * n - 1) * cell
    top = (spec.height - text_h) // 2
    left = (spec.width - text_w) // 2
    return cell, frame, top, left


def ink_mask(spec: PlateSpec) -> np.ndarray:
    """True where the noiseless plate is drawn in the foreground intensity."""
    h, w = spec.height, spec.width
    ink = np.zeros((h, w), dtype=bool)
    cell, frame, top, left = layout(spec)
    off = frame
    ink[off:off + frame, off:w - off] = True
    ink[h - off - frame:h - off, off:w - off] = True
    ink[off:h - off, off:off + frame] = True
    ink[off:h - off, w - off - frame:w - off] = True
    for k, ch in enumerate(spec.text):
        x0 = left + k * 6 * cell
        for r, row in enumerate(FONT[ch]):
            for c, bit in enumerate(row):
                if bit == "1":
                    y, x = top + r * cell, x0 + c * cell
                    ink[y:y + cell, x:x + cell] = True
    return ink


def boundary(ink: np.ndarray) -> np.ndarray:
    """Ink pixels with a non-ink 4-neighbor (image border does not count)."""
    p = np.pad(ink, 1, mode="edge")
    other = (~p[:-2, 1:-1]) | (~p[2:, 1:-1]) | (~p[1:-1, :-2]) | (~p[1:-1, 2:])
    return ink & other


def _blotches(spec: PlateSpec) -> np.ndarray:
    """Seeded elliptical blotches covering at most 10% of the plate."""
    h, w = spec.height, spec.width
    rng = Stream(spec.seed ^ 0xB10C)
    mask = np.zeros((h, w), dtype=bool)
    cap = int(BLOTCH_AREA_CAP * h * w)
    yy, xx = np.mgrid[0:h, 0:w]
    count = rng.randint(3, 6)
    for _ in range(count):
        ry = rng.randint(max(2, h // 20), max(3, h // 6))
        rx = rng.randint(max(2, w // 40), max(3, w // 12))
        cy, cx = rng.randint(0, h - 1), rng.randint(0, w - 1)
        blob = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0
        if (mask | blob).sum() > cap:
            continue
        mask |= blob
    return mask


def render_plate(spec: PlateSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(image, truth)`` for ``spec``."""
    ink = ink_mask(spec)
    img = np.where(ink, float(spec.foreground), float(spec.background))
    truth = boundary(ink)
    if spec.style == "faded":
        mid = (spec.foreground + spec.background) / 2.0
        img = mid + FADE_FACTOR * (img - mid)
    elif spec.style == "dirty":
        blot = _blotches(spec)
        img[blot] = (spec.foreground + spec.background) / 2.0
        truth = truth & ~blot
    return img, truth


def random_text(seed: int, length: int = 7) -> str:
    """Plate-like string: three letters then digits."""
    rng = Stream(seed)
    letters = "".join(LETTERS[rng.randint(0, len(LETTERS) - 1)] for _ in range(3))
    digits = "".join(DIGITS[rng.randint(0, 9)] for _ in range(length - 3))
    return letters + digits


def corpus_specs(count: int, styles=("clean",), base_seed: int = 1000,
                 width: int = 240, height: int = 80) -> list[tuple[str, PlateSpec]]:
    """``count`` plates per style, ids ``plate_<seed>_<style>``."""
    out = []
    for i in range(count):
        seed = base_seed + i
        text = random_text(seed)
        for style in styles:
            out.append((f"plate_{seed}_{style}",
                        PlateSpec(text=text, style=style, seed=seed, width=width, height=height)))
    return out


def write_manifest(entries) -> str:
    return "".join(f"{pid}\t{spec.fields()}\n" for pid, spec in entries)


def read_manifest(text: str) -> list[tuple[str, PlateSpec]]:
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        pid, fields = line.split("\t", 1)
        out.append((pid, PlateSpec.from_fields(fields)))
    return out
