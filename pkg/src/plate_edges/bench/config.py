"""Benchmark configuration files.

Grammar: one ``key = value`` per line; blank lines and lines starting with
``#`` are ignored; list values are comma-separated; keys are case-sensitive
and unknown keys are an error.  See ``KEYS`` for the accepted keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from ..detectors import DETECTORS, CannyConfig, CopdaConfig
from ..filters import EnhanceConfig
from ..noise import KINDS
from ..plate_synth import STYLES, corpus_specs

PREPROCESS_STAGES = ("median", "box_average", "enhance")
DEFAULT_LEVELS = (0.0,) + tuple(round(0.50 - 0.02 * i, 2) for i in range(11))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FileItem:
    plate_id: str
    image: Path
    truth: Path


@dataclass(frozen=True)
class BenchConfig:
    detectors: tuple = DETECTORS
    noise_kind: str = "impulse"
    levels: tuple = DEFAULT_LEVELS
    preprocess: tuple = ("box_average", "enhance")
    seeds: tuple = (1,)
    output_dir: Path | None = None
    dump_edges: bool = False
    workers: int = 1
    timing: bool = True
    # synthetic corpus
    plate_count: int = 20
    plate_styles: tuple = ("clean",)
    plate_seed: int = 1000
    plate_width: int = 240
    plate_height: int = 80
    plates: tuple = ()
    # file corpus (replaces synthetic plates when given)
    inputs: tuple = ()
    # stage parameters
    median_window: int = 3
    enhance: EnhanceConfig = field(default_factory=EnhanceConfig)
    canny: CannyConfig = field(default_factory=CannyConfig)
    copda: CopdaConfig = field(default_factory=CopdaConfig)
    threshold: object = "auto"

    def __post_init__(self):
        if not self.detectors:
            raise ConfigError("detectors must be non-empty")
        for d in self.detectors:
            if d not in DETECTORS:
                raise ConfigError(f"unknown detector {d!r}")
        if self.noise_kind not in KINDS:
            raise ConfigError(f"unknown noise kind {self.noise_kind!r}")
        if not self.levels:
            raise ConfigError("levels must be non-empty")
        for lv in self.levels:
            if not 0.0 <= lv <= 1.0:
                raise ConfigError(f"noise level {lv} outside [0, 1]")
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")
        for p in self.preprocess:
            if p not in PREPROCESS_STAGES:
                raise ConfigError(f"unknown preprocess stage {p!r}")
        for s in self.plate_styles:
            if s not in STYLES:
                raise ConfigError(f"unknown plate style {s!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def corpus(self) -> list:
        """Plate ``(id, PlateSpec)`` pairs or :class:`FileItem` entries."""
        if self.inputs:
            return list(self.inputs)
        if self.plates:
            return list(self.plates)
        return corpus_specs(self.plate_count, self.plate_styles, self.plate_seed,
                            self.plate_width, self.plate_height)


def _list(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def _inputs(value: str, base: Path) -> tuple:
    items = []
    for entry in _list(value):
        parts = entry.split(":")
        if len(parts) != 2:
            raise ConfigError(f"input entry must be image:truth, got {entry!r}")
        img, truth = (base / p for p in parts)
        items.append(FileItem(Path(parts[0]).stem, img, truth))
    return tuple(items)


# key -> (BenchConfig field or sub-config path, parser)
KEYS = {
    "detectors": ("detectors", lambda v, b: tuple(_list(v))),
    "noise_kind": ("noise_kind", lambda v, b: v.strip()),
    "levels": ("levels", lambda v, b: tuple(float(x) for x in _list(v))),
    "preprocess": ("preprocess", lambda v, b: tuple(x for x in _list(v) if x != "none")),
    "seeds": ("seeds", lambda v, b: tuple(int(x) for x in _list(v))),
    "output_dir": ("output_dir", lambda v, b: b / v.strip()),
    "dump_edges": ("dump_edges", lambda v, b: _bool(v)),
    "workers": ("workers", lambda v, b: int(v)),
    "timing": ("timing", lambda v, b: _bool(v)),
    "plate_count": ("plate_count", lambda v, b: int(v)),
    "plate_styles": ("plate_styles", lambda v, b: tuple(_list(v))),
    "plate_seed": ("plate_seed", lambda v, b: int(v)),
    "plate_width": ("plate_width", lambda v, b: int(v)),
    "plate_height": ("plate_height", lambda v, b: int(v)),
    "inputs": ("inputs", _inputs),
    "median_window": ("median_window", lambda v, b: int(v)),
    "threshold": ("threshold", lambda v, b: "auto" if v.strip() == "auto" else float(v)),
    "enhance_m": ("enhance.m", lambda v, b: float(v)),
    "enhance_sigma": ("enhance.sigma", lambda v, b: float(v)),
    "canny_sigma": ("canny.gauss_sigma", lambda v, b: float(v)),
    "canny_size": ("canny.gauss_size", lambda v, b: int(v)),
    "canny_high_quantile": ("canny.high_quantile", lambda v, b: float(v)),
    "canny_low_ratio": ("canny.low_ratio", lambda v, b: float(v)),
    "copda_window": ("copda.window", lambda v, b: int(v)),
    "copda_contrast_threshold": ("copda.contrast_threshold", lambda v, b: float(v)),
    "copda_min_chain": ("copda.min_chain", lambda v, b: int(v)),
    "copda_thin": ("copda.thin", lambda v, b: _bool(v)),
}


def parse_config(text: str, base_dir: Path | str = ".") -> BenchConfig:
    base = Path(base_dir)
    top: dict = {}
    sub: dict = {"enhance": {}, "canny": {}, "copda": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        target, parse = KEYS[key]
        try:
            parsed = parse(value, base)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
        if "." in target:
            group, name = target.split(".")
            sub[group][name] = parsed
        else:
            top[target] = parsed
    try:
        defaults = BenchConfig()
        for group, values in sub.items():
            if values:
                top[group] = replace(getattr(defaults, group), **values)
        return BenchConfig(**top)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> BenchConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.parent)


__all__ = ["BenchConfig", "ConfigError", "DEFAULT_LEVELS", "FileItem", "KEYS",
           "PREPROCESS_STAGES", "load_config", "parse_config"]
