"""Edge detectors.  Every detector maps a gray image to a boolean edge map."""

from __future__ import annotations

from ..morphology import box_se, morph_gradient
from .canny import CannyConfig, canny_detect
from .copda import CopdaConfig, copda_detect
from .gradient import (
    GradientField,
    gradient,
    gradient_detect,
    laplacian_detect,
    laplacian_response,
)
from .otsu import otsu_threshold

DETECTORS = ("sobel", "prewitt", "roberts", "laplacian", "canny", "copda", "morph")
SINGLE_PIXEL = ("sobel", "prewitt", "roberts", "laplacian", "canny")


def morph_detect(img, threshold="auto"):
    """Morphological gradient over a full 3x3 element; "auto" uses Otsu."""
    grad = morph_gradient(img, box_se())
    if threshold is None or threshold == "auto":
        threshold = otsu_threshold(grad)
    elif threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    return grad > threshold


def detect(name: str, img, threshold="auto", canny: CannyConfig | None = None,
           copda: CopdaConfig | None = None):
    """Run detector ``name`` with its parameters."""
    if name in ("sobel", "prewitt", "roberts"):
        return gradient_detect(img, name, threshold)
    if name == "laplacian":
        return laplacian_detect(img, threshold)
    if name == "canny":
        return canny_detect(img, canny or CannyConfig())
    if name == "copda":
        return copda_detect(img, copda or CopdaConfig())
    if name == "morph":
        return morph_detect(img, threshold)
    raise ValueError(f"unknown detector {name!r}; expected one of {DETECTORS}")


__all__ = [
    "CannyConfig", "CopdaConfig", "DETECTORS", "GradientField", "SINGLE_PIXEL",
    "canny_detect", "copda_detect", "detect", "gradient", "gradient_detect",
    "laplacian_detect", "laplacian_response", "morph_detect", "otsu_threshold",
]
