"""Stencil-similarity weighted regression and the full impulse-denoising pipeline.

Pipeline: detect impulses, median-prefilter them, label every pixel with its
best contour stencil, then repair each flagged pixel as the similarity-weighted
average of the center intensities of its nearest candidate patches. Candidate
intensities are always read from the original noisy image (two-pass semantics:
no repaired value feeds another repair), so results are independent of repair
order and thread count.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .image import PatchRef, as_image
from .matching import MatchConfig, METRIC_STENCIL
from .noise import detect_noise
from .stencils import StencilMap, label_stencils, median_prefilter

KERNEL_RECIPROCAL = "reciprocal"    # 1 / (exp(d2/sigma) * ln sigma)
KERNEL_SIMPLIFIED = "simplified"    # exp(-d2/sigma); same weights after normalization


@dataclass(frozen=True)
class FilterConfig:
    sigma: float = math.e
    match: MatchConfig = field(default_factory=MatchConfig)
    delta: int = 0
    fallback: str = "median"
    kernel: str = KERNEL_RECIPROCAL

    def __post_init__(self):
        if not self.sigma > 1.0:
            raise ValueError(f"sigma must be > 1, got {self.sigma}")
        if not 0 <= self.delta < 128:
            raise ValueError(f"delta must be in [0, 128), got {self.delta}")
        if self.fallback != "median":
            raise ValueError(f"unknown fallback {self.fallback!r}")
        if self.kernel not in (KERNEL_RECIPROCAL, KERNEL_SIMPLIFIED):
            raise ValueError(f"unknown kernel {self.kernel!r}")


@dataclass
class DenoiseReport:
    repaired_count: int
    fallback_count: int
    prefilter_warnings: int
    elapsed_ms: int
    config: FilterConfig

    def as_dict(self) -> dict:
        m = self.config.match
        return {
            "config": {
                "sigma": self.config.sigma,
                "patch_size": m.patch_size,
                "neighbors": m.neighbors,
                "search_window": m.search_window,
                "metric": m.metric,
                "delta": self.config.delta,
                "fallback": self.config.fallback,
                "kernel": self.config.kernel,
            },
            "repaired_count": self.repaired_count,
            "fallback_count": self.fallback_count,
            "prefilter_warnings": self.prefilter_warnings,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def wrap_orientation(diff):
    """Wrap an angle difference into (-pi/2, pi/2]; orientations have period pi."""
    return np.pi / 2 - ((np.pi / 2 - np.asarray(diff, dtype=np.float64)) % np.pi)


def stencil_distance(angles_p, angles_q) -> float:
    """Sum of squared wrapped angle differences between two stencil crops."""
    a = np.asarray(angles_p, dtype=np.float64)
    b = np.asarray(angles_q, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"crop shapes differ: {a.shape} vs {b.shape}")
    wd = wrap_orientation(a - b)
    return float((wd * wd).sum())


def stencil_similarity(d2: float, sigma: float, kernel: str = KERNEL_RECIPROCAL) -> float:
    """Similarity of two stencil crops from their squared distance.

    The reciprocal kernel is 1/(exp(d2/sigma) * ln sigma), evaluated as
    exp(-d2/sigma)/ln(sigma) to avoid overflow; it requires sigma > 1. The
    simplified kernel drops the constant 1/ln(sigma) factor, which cancels
    under weight normalization anyway.
    """
    if not sigma > 1.0:
        raise ValueError(f"sigma must be > 1, got {sigma}")
    if d2 < 0.0:
        raise ValueError(f"squared distance must be >= 0, got {d2}")
    if kernel == KERNEL_RECIPROCAL:
        return float(np.exp(-d2 / sigma) / np.log(sigma))
    if kernel == KERNEL_SIMPLIFIED:
        return float(np.exp(-d2 / sigma))
    raise ValueError(f"unknown kernel {kernel!r}")


def stencil_weights(similarities) -> np.ndarray:
    """Normalize similarities to weights summing to 1."""
    s = np.asarray(similarities, dtype=np.float64)
    if s.size == 0:
        raise ValueError("cannot build weights from an empty similarity list")
    if (s <= 0.0).any():
        raise ValueError("similarities must be positive")
    return s / s.sum()


def _restore_coords(img, mask, angles, prefiltered, cfg: FilterConfig,
                    coords: np.ndarray, workers: int = 1):
    """Run the repair kernel over flagged (y, x) coords; returns (values, fallback flags)."""
    from .matching import _mask_bits, _patch_rows

    m = cfg.match
    size = m.patch_size
    P = _patch_rows(img, size)
    B = _mask_bits(mask, size)
    pa = np.pad(angles, size // 2, mode="edge")
    mask_u8 = mask.astype(np.uint8)
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    values = np.empty(len(coords), dtype=np.float64)
    fallback = np.zeros(len(coords), dtype=np.uint8)
    args = (size, m.neighbors, m.window_or_zero, float(cfg.sigma),
            cfg.kernel == KERNEL_RECIPROCAL, m.metric == METRIC_STENCIL)
    if workers <= 1 or len(coords) < 2 * workers:
        _kernels.restore_pixels(P, B, pa, mask_u8, prefiltered, coords, *args,
                                values, fallback)
    else:
        # nogil kernel + disjoint slices: identical output for any worker count
        bounds = np.linspace(0, len(coords), workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_kernels.restore_pixels, P, B, pa, mask_u8, prefiltered,
                            coords[a:b], *args, values[a:b], fallback[a:b])
                for a, b in zip(bounds[:-1], bounds[1:]) if b > a
            ]
            for f in futures:
                f.result()
    return values, fallback


def restore_pixel(img: np.ndarray, mask: np.ndarray, smap: StencilMap,
                  target: PatchRef, cfg: FilterConfig) -> float:
    """Restored intensity for one flagged center; prefilter median on fallback."""
    img = np.asarray(img, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    coords = np.array([[target.center_y, target.center_x]], dtype=np.int64)
    values, fallback = _restore_coords(img, mask, smap.angles, img, cfg, coords)
    if fallback[0]:
        return _prefilter_value_at(img, mask, target.center_x, target.center_y)
    return float(values[0])


def _prefilter_value_at(img, mask, x, y) -> float:
    # single-pixel version of stencils.median_prefilter
    from .stencils import MEDIAN_FALLBACK, MEDIAN_WINDOW_CAP

    for k in range(3, MEDIAN_WINDOW_CAP + 1, 2):
        r = k // 2
        ysl = slice(max(0, y - r), y + r + 1)
        xsl = slice(max(0, x - r), x + r + 1)
        clean = img[ysl, xsl][~mask[ysl, xsl]]
        if clean.size:
            return float(np.sort(clean)[(clean.size - 1) // 2])
    return MEDIAN_FALLBACK


def denoise(img: np.ndarray, cfg: FilterConfig | None = None,
            workers: int = 1) -> tuple[np.ndarray, DenoiseReport]:
    """Remove salt-and-pepper noise; returns (restored image, run report).

    Unflagged pixels are copied bit-exactly; each flagged pixel is replaced by
    the stencil-similarity weighted average of matched patch centers.
    """
    t0 = time.perf_counter()
    if cfg is None:
        cfg = FilterConfig()
    img = as_image(img)
    mask = detect_noise(img, cfg.delta)
    prefiltered, warnings = median_prefilter(img, mask)
    out = img.copy()
    fallback_count = 0
    coords = np.argwhere(mask)
    if len(coords):
        smap = label_stencils(prefiltered)
        values, fallback = _restore_coords(
            img, mask, smap.angles, prefiltered, cfg, coords, workers)
        out[mask] = values  # argwhere and boolean assignment share row-major order
        fallback_count = int(fallback.sum())
    elapsed_ms = int(round((time.perf_counter() - t0) * 1000.0))
    report = DenoiseReport(
        repaired_count=len(coords),
        fallback_count=fallback_count,
        prefilter_warnings=warnings,
        elapsed_ms=elapsed_ms,
        config=cfg,
    )
    return out, report
