"""Noise-robust weighted patch distance and nearest-neighbor candidate search.

The distance between two patches is a trimmed mean of squared differences:
the positions most likely to be impulses (estimated as the union of flagged
positions across both patches) carry weight 0, the rest a uniform weight, so
extreme impulse values cannot dominate the match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import _kernels
from .image import PatchRef

FULL_WINDOW = "full"
METRIC_INTENSITY = "intensity"
METRIC_STENCIL = "stencil"


@dataclass(frozen=True)
class MatchConfig:
    patch_size: int = 7
    neighbors: int = 16                     # candidates kept per target
    search_window: Union[int, str] = 39     # odd side length, or "full"
    metric: str = METRIC_INTENSITY

    def __post_init__(self):
        if self.patch_size < 3 or self.patch_size % 2 == 0:
            raise ValueError(f"patch_size must be odd and >= 3, got {self.patch_size}")
        if self.neighbors < 1:
            raise ValueError(f"neighbors must be >= 1, got {self.neighbors}")
        if self.search_window != FULL_WINDOW:
            if not isinstance(self.search_window, int) or self.search_window < 1 \
                    or self.search_window % 2 == 0:
                raise ValueError(
                    f"search_window must be an odd integer or 'full', got {self.search_window!r}")
        if self.metric not in (METRIC_INTENSITY, METRIC_STENCIL):
            raise ValueError(f"metric must be 'intensity' or 'stencil', got {self.metric!r}")

    @property
    def window_or_zero(self) -> int:
        """Window side for the kernels; 0 encodes full-image search."""
        return 0 if self.search_window == FULL_WINDOW else int(self.search_window)


class ScoredCandidate(NamedTuple):
    patch: PatchRef
    distance: float


def weighted_distance(p, q, n_noisy: int) -> float:
    """Trimmed mean of squared differences between two flat patch vectors.

    The n_noisy largest squared differences get weight 0, the remaining
    n - n_noisy get weight 1/(n - n_noisy).
    """
    p = np.asarray(p, dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    if p.size != q.size:
        raise ValueError(f"patch lengths differ: {p.size} vs {q.size}")
    n = p.size
    if not 0 <= n_noisy < n:
        raise ValueError(f"n_noisy must be in [0, {n}), got {n_noisy}")
    d2 = np.sort((p - q) ** 2)  # ascending: the n_noisy largest are dropped
    keep = n - n_noisy
    return float(d2[:keep].sum() / keep)


def _patch_rows(plane: np.ndarray, size: int) -> np.ndarray:
    """Contiguous (h*w, size*size) matrix of clamped flat patches, one per center."""
    pad = size // 2
    padded = np.pad(plane, pad, mode="edge")
    windows = sliding_window_view(padded, (size, size))
    h, w = plane.shape
    return np.ascontiguousarray(windows.reshape(h * w, size * size))


def _mask_bits(mask: np.ndarray, size: int) -> np.ndarray:
    """Per-center patch flags packed into uint64 words (bit i = flat position i)."""
    flags = _patch_rows(mask.astype(np.uint8), size).astype(bool)
    n = size * size
    n_words = (n + 63) // 64
    bits = np.zeros((flags.shape[0], n_words), dtype=np.uint64)
    for word in range(n_words):
        chunk = flags[:, word * 64:(word + 1) * 64]
        weights = np.uint64(1) << np.arange(chunk.shape[1], dtype=np.uint64)
        bits[:, word] = (chunk * weights).sum(axis=1, dtype=np.uint64)
    return bits


def _patch_flags(mask: np.ndarray, ref: PatchRef) -> np.ndarray:
    h, w = mask.shape
    r = ref.size // 2
    ys = np.clip(np.arange(ref.center_y - r, ref.center_y + r + 1), 0, h - 1)
    xs = np.clip(np.arange(ref.center_x - r, ref.center_x + r + 1), 0, w - 1)
    return mask[np.ix_(ys, xs)].ravel()


def estimate_noisy_count(mask: np.ndarray, p: PatchRef, q: PatchRef) -> int:
    """Positions flagged in either patch (union over flat positions), capped at n-1."""
    if p.size != q.size:
        raise ValueError(f"patch sizes differ: {p.size} vs {q.size}")
    mask = np.asarray(mask, dtype=bool)
    union = _patch_flags(mask, p) | _patch_flags(mask, q)
    return int(min(np.count_nonzero(union), p.size * p.size - 1))


def find_similar(img: np.ndarray, mask: np.ndarray, target: PatchRef,
                 cfg: MatchConfig, stencil_angles: np.ndarray | None = None
                 ) -> list[ScoredCandidate]:
    """The cfg.neighbors nearest candidate patches to `target`, ascending distance.

    Every center inside the search window (or the whole image for "full") is
    scored except the target itself; per-pair noisy counts come from the mask
    union. Ties keep row-major candidate order. Returns fewer candidates only
    when the window holds fewer than cfg.neighbors centers. With
    cfg.metric == "stencil", candidates are ranked by stencil-crop distance
    instead and `stencil_angles` (per-pixel angle map) is required.
    """
    img = np.asarray(img, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != img.shape:
        raise ValueError(f"mask shape {mask.shape} != image shape {img.shape}")
    if target.size != cfg.patch_size:
        raise ValueError(f"target size {target.size} != cfg.patch_size {cfg.patch_size}")
    size = cfg.patch_size
    pad = size // 2
    P = _patch_rows(img, size)
    B = _mask_bits(mask, size)
    stencil_metric = cfg.metric == METRIC_STENCIL
    if stencil_metric:
        if stencil_angles is None:
            raise ValueError("metric 'stencil' requires a stencil_angles map")
        pa = np.pad(np.asarray(stencil_angles, dtype=np.float64), pad, mode="edge")
    else:
        pa = np.empty((0, 0))  # unused by the kernel for the intensity metric

    h, w = img.shape
    mm = cfg.neighbors
    best_y = np.empty(mm, dtype=np.int64)
    best_x = np.empty(mm, dtype=np.int64)
    best_d = np.empty(mm, dtype=np.float64)
    buf = np.empty(size * size, dtype=np.float64)
    scratch = np.empty(size * size, dtype=np.float64)
    count = _kernels.find_candidates(
        P, B, pa, h, w, target.center_y, target.center_x, size, mm,
        cfg.window_or_zero, stencil_metric, best_y, best_x, best_d, buf, scratch)
    return [ScoredCandidate(PatchRef(int(best_x[j]), int(best_y[j]), size), float(best_d[j]))
            for j in range(count)]
