"""Image arrays, grayscale conversion, quantization and PNM I/O.

Images are plain numpy arrays indexed ``[row, column]``:

* gray image: float64, shape ``(height, width)``, values in [0, 255]
* color image: float64, shape ``(height, width, 3)``, RGB order
* edge map: bool, shape ``(height, width)``, True marks an edge pixel

Intensities stay real-valued through the whole pipeline; ``quantize`` is only
needed right before writing 8-bit files.
"""

from __future__ import annotations

import re

import numpy as np

GRAY_WEIGHTS = (0.2989, 0.587, 0.114)


class PnmError(ValueError):
    """Base class for PNM parse errors."""


class BadMagicError(PnmError):
    pass


class BadDimensionError(PnmError):
    pass


class BadMaxvalError(PnmError):
    pass


class TruncatedPayloadError(PnmError):
    pass


class UnquantizedImageError(ValueError):
    """Raised when writing an image whose samples are not integers in [0, 255]."""


def as_gray(img) -> np.ndarray:
    """Validate and return ``img`` as a float64 gray image."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"gray image must be a non-empty 2-D array, got shape {arr.shape}")
    return arr


def as_edges(edges) -> np.ndarray:
    arr = np.asarray(edges)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"edge map must be a non-empty 2-D array, got shape {arr.shape}")
    return arr.astype(bool)


def rgb_to_gray(img) -> np.ndarray:
    """Weighted channel sum ``0.2989 R + 0.587 G + 0.114 B`` without rounding."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"color image must have shape (h, w, 3), got {arr.shape}")
    r, g, b = GRAY_WEIGHTS
    return r * arr[..., 0] + g * arr[..., 1] + b * arr[..., 2]


def quantize(img) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero.

    After clamping all values are non-negative, so half-away-from-zero is
    ``floor(x + 0.5)``.  The result keeps the float dtype.
    """
    arr = np.asarray(img, dtype=np.float64)
    return np.floor(np.clip(arr, 0.0, 255.0) + 0.5)


def edges_to_gray(edges) -> np.ndarray:
    return np.where(as_edges(edges), 255.0, 0.0)


def gray_to_edges(img) -> np.ndarray:
    """Nonzero pixels are edges (accepts 0/255 or 0/1 maps)."""
    return as_gray(img) > 0


# -- PNM ---------------------------------------------------------------------

_MAGICS = {b"P2": (False, 1), b"P3": (False, 3), b"P5": (True, 1), b"P6": (True, 3)}


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Read one whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise TruncatedPayloadError("unexpected end of header")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str, error) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        return int(token), pos
    except ValueError:
        raise error(f"bad {what}: {token!r}") from None


def load_pnm(data: bytes) -> np.ndarray:
    """Decode a P2/P3/P5/P6 file with maxval 255.

    Returns a gray image ``(h, w)`` for PGM and a color image ``(h, w, 3)`` for
    PPM, both float64.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in _MAGICS:
        raise BadMagicError(f"unsupported magic number {magic!r}")
    binary, channels = _MAGICS[magic]
    pos = 2
    if pos < len(data) and not (data[pos:pos + 1].isspace() or data[pos:pos + 1] == b"#"):
        raise BadMagicError(f"unsupported magic number {data[:3]!r}")

    width, pos = _header_int(data, pos, "width", BadDimensionError)
    height, pos = _header_int(data, pos, "height", BadDimensionError)
    if width <= 0 or height <= 0:
        raise BadDimensionError(f"dimensions must be positive, got {width}x{height}")
    maxval, pos = _header_int(data, pos, "maxval", BadMaxvalError)
    if maxval != 255:
        raise BadMaxvalError(f"only maxval 255 is supported, got {maxval}")

    count = width * height * channels
    if binary:
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise TruncatedPayloadError("missing whitespace after maxval")
        payload = data[pos + 1:pos + 1 + count]
        if len(payload) < count:
            raise TruncatedPayloadError(f"expected {count} bytes, got {len(payload)}")
        values = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    else:
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise TruncatedPayloadError(f"expected {count} samples, got {len(tokens)}")
        try:
            values = np.array([int(t) for t in tokens[:count]], dtype=np.float64)
        except ValueError:
            raise PnmError("non-integer sample in ASCII payload") from None
        if values.min() < 0 or values.max() > maxval:
            raise PnmError("sample outside [0, maxval]")

    if channels == 1:
        return values.reshape(height, width)
    return values.reshape(height, width, 3)


def save_pnm(img) -> bytes:
    """Encode as binary P5 (2-D input) or P6 (``(h, w, 3)`` input)."""
    arr = np.asarray(img)
    if arr.dtype == bool:
        raise UnquantizedImageError("edge maps must be converted with edges_to_gray first")
    arr = arr.astype(np.float64)
    if arr.ndim == 2:
        magic = b"P5"
    elif arr.ndim == 3 and arr.shape[2] == 3:
        magic = b"P6"
    else:
        raise ValueError(f"cannot encode array of shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("cannot encode an empty image")
    if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)) or arr.min() < 0 or arr.max() > 255:
        raise UnquantizedImageError("image must hold integer intensities in [0, 255]; call quantize()")
    height, width = arr.shape[:2]
    header = b"%s\n%d %d\n255\n" % (magic, width, height)
    return header + arr.astype(np.uint8).tobytes()


def read_image(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return load_pnm(fh.read())


def read_gray(path) -> np.ndarray:
    """Read a PNM file, converting PPM to gray."""
    img = read_image(path)
    return rgb_to_gray(img) if img.ndim == 3 else img


def write_image(path, img) -> None:
    with open(path, "wb") as fh:
        fh.write(save_pnm(img))
