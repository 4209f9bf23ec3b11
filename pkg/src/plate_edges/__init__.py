"""Edge detection benchmark for number-plate preprocessing."""

from .detectors import CannyConfig, CopdaConfig, detect
from .filters import EnhanceConfig, box_average, convolve, enhance_power, median_filter
from .image_core import load_pnm, quantize, rgb_to_gray, save_pnm
from .metrics import PfomResult, pfom
from .noise import NoiseSpec, add_impulse, add_speckle
from .plate_synth import PlateSpec, render_plate

__version__ = "0.1.0"

__all__ = [
    "CannyConfig", "CopdaConfig", "EnhanceConfig", "NoiseSpec", "PfomResult", "PlateSpec",
    "add_impulse", "add_speckle", "box_average", "convolve", "detect", "enhance_power",
    "load_pnm", "median_filter", "pfom", "quantize", "render_plate", "rgb_to_gray", "save_pnm",
]
