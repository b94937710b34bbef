"""Grayscale image container, boundary-aware access, patch extraction, and file I/O.

Images are 2-D float64 numpy arrays with intensities in [0, 255]. Values stay
real-valued through the whole pipeline and are only quantized to 8 bits when a
file is written. Supported formats: binary PGM (P5, maxval 255) and 8-bit
grayscale PNG.
"""

from __future__ import annotations

import enum
import io
from pathlib import Path
from typing import NamedTuple

import numpy as np

_PGM_WHITESPACE = frozenset(b" \t\n\r\v\f")


class ImageFormatError(ValueError):
    """Raised when image bytes cannot be decoded."""


class BoundaryPolicy(enum.Enum):
    """How out-of-range coordinates are handled; only clamp-to-edge exists."""

    CLAMP = "clamp"


class PatchRef(NamedTuple):
    """Square odd-sided patch centered at (center_x, center_y)."""

    center_x: int
    center_y: int
    size: int


def as_image(arr) -> np.ndarray:
    """Validate and return `arr` as a 2-D float64 image in [0, 255]."""
    img = np.asarray(arr, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"image must be a non-empty 2-D array, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ValueError("image contains non-finite intensities")
    lo, hi = float(img.min()), float(img.max())
    if lo < 0.0 or hi > 255.0:
        raise ValueError(f"image intensities must lie in [0, 255], got [{lo}, {hi}]")
    return img


def quantize(img: np.ndarray) -> np.ndarray:
    """Round half-up to the nearest integer, clamp to [0, 255], return uint8."""
    return np.clip(np.floor(np.asarray(img, dtype=np.float64) + 0.5), 0, 255).astype(np.uint8)


def pixel_at(img: np.ndarray, x: int, y: int,
             policy: BoundaryPolicy = BoundaryPolicy.CLAMP) -> float:
    """Intensity at (x, y); out-of-range coordinates are clamped to the edge."""
    h, w = img.shape
    return float(img[min(max(y, 0), h - 1), min(max(x, 0), w - 1)])


def extract_patch(img: np.ndarray, ref: PatchRef,
                  policy: BoundaryPolicy = BoundaryPolicy.CLAMP) -> np.ndarray:
    """Flat row-major vector of the size*size patch around the ref center."""
    if ref.size < 3 or ref.size % 2 == 0:
        raise ValueError(f"patch size must be odd and >= 3, got {ref.size}")
    h, w = img.shape
    r = ref.size // 2
    ys = np.clip(np.arange(ref.center_y - r, ref.center_y + r + 1), 0, h - 1)
    xs = np.clip(np.arange(ref.center_x - r, ref.center_x + r + 1), 0, w - 1)
    return img[np.ix_(ys, xs)].ravel()


def _next_token(data: bytes, pos: int, field: str) -> tuple[bytes, int]:
    # PNM tokens are separated by whitespace; '#' starts a comment to end of line.
    n = len(data)
    while pos < n:
        if data[pos] in _PGM_WHITESPACE:
            pos += 1
        elif data[pos] == 0x23:  # '#'
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _PGM_WHITESPACE:
        pos += 1
    if start == pos:
        raise ImageFormatError(f"malformed PGM header: missing {field}")
    return data[start:pos], pos


def _parse_int(token: bytes, field: str) -> int:
    if not token.isdigit():
        raise ImageFormatError(f"malformed PGM header: {field} {token!r} is not a number")
    return int(token)


def _load_pgm(data: bytes) -> np.ndarray:
    magic, pos = _next_token(data, 0, "magic")
    if magic != b"P5":
        raise ImageFormatError(f"unsupported format: magic {magic!r} (only binary PGM 'P5')")
    tok, pos = _next_token(data, pos, "width")
    width = _parse_int(tok, "width")
    tok, pos = _next_token(data, pos, "height")
    height = _parse_int(tok, "height")
    tok, pos = _next_token(data, pos, "maxval")
    maxval = _parse_int(tok, "maxval")
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"malformed PGM header: dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"unsupported bit depth: maxval {maxval} (only 255)")
    if pos >= len(data) or data[pos] not in _PGM_WHITESPACE:
        raise ImageFormatError("malformed PGM header: missing whitespace before payload")
    payload = data[pos + 1:]
    expected = width * height
    if len(payload) < expected:
        raise ImageFormatError(
            f"truncated payload: expected {expected} bytes, got {len(payload)}")
    if len(payload) > expected:
        raise ImageFormatError(
            f"oversized payload: expected {expected} bytes, got {len(payload)}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).astype(np.float64)


def _load_png(data: bytes) -> np.ndarray:
    from PIL import Image as PILImage

    try:
        pil = PILImage.open(io.BytesIO(data))
        pil.load()
    except Exception as exc:
        raise ImageFormatError(f"malformed PNG data: {exc}") from exc
    if pil.mode != "L":
        raise ImageFormatError(
            f"unsupported bit depth: PNG mode {pil.mode!r} (only 8-bit grayscale 'L')")
    return np.asarray(pil, dtype=np.uint8).astype(np.float64)


def load_image(data: bytes) -> np.ndarray:
    """Decode PGM (P5) or 8-bit grayscale PNG bytes into a float64 image.

    Pixel values are preserved exactly. Malformed input raises
    ImageFormatError naming the offending field.
    """
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(data)
    return _load_pgm(data)


def save_image(img: np.ndarray, format: str = "pgm") -> bytes:
    """Encode an image losslessly as 8-bit PGM (P5) or grayscale PNG bytes.

    Real-valued intensities are rounded half-up and clamped to [0, 255].
    """
    img = as_image(img)
    pixels = quantize(img)
    h, w = pixels.shape
    if format == "pgm":
        return f"P5\n{w} {h}\n255\n".encode("ascii") + pixels.tobytes()
    if format == "png":
        from PIL import Image as PILImage

        buf = io.BytesIO()
        PILImage.fromarray(pixels, mode="L").save(buf, format="PNG")
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r} (expected 'pgm' or 'png')")


def load_image_file(path) -> np.ndarray:
    """Read a PGM or PNG file (format sniffed from the magic bytes)."""
    return load_image(Path(path).read_bytes())


def save_image_file(img: np.ndarray, path) -> None:
    """Write an image file; format chosen by the path suffix (.pgm or .png)."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        fmt = "png"
    elif suffix in (".pgm", ""):
        fmt = "pgm"
    else:
        raise ValueError(f"unsupported output suffix {path.suffix!r} (use .pgm or .png)")
    path.write_bytes(save_image(img, fmt))
