"""Synthetic test images.

All generators keep intensities well inside (0, 255) so that with delta = 0
no clean pixel is ever mistaken for an impulse.
"""

from __future__ import annotations

import numpy as np


def two_tone(size: int = 256, lo: float = 64.0, hi: float = 192.0) -> np.ndarray:
    """Vertical step edge: left half `lo`, right half `hi`."""
    img = np.full((size, size), lo)
    img[:, size // 2:] = hi
    return img


def gradient(width: int = 16, height: int = 16) -> np.ndarray:
    """Smooth ramp covering all 256 levels scaled into [10, 245]."""
    ramp = np.linspace(0.0, 1.0, width * height).reshape(height, width)
    return 10.0 + ramp * 235.0


def blocks(size: int = 128, seed: int = 7, count: int = 24) -> np.ndarray:
    """Piecewise-constant rectangles on a mid-gray base."""
    rng = np.random.Generator(np.random.PCG64(seed))
    img = np.full((size, size), 128.0)
    levels = np.linspace(24.0, 232.0, 14)
    for _ in range(count):
        y0, x0 = rng.integers(0, size - 4, size=2)
        bh = int(rng.integers(4, max(5, size // 3)))
        bw = int(rng.integers(4, max(5, size // 3)))
        img[y0:y0 + bh, x0:x0 + bw] = rng.choice(levels)
    return img


def natural(size: int = 256, seed: int = 11) -> np.ndarray:
    """Natural-style composite: smooth shading, oriented waves, sharp shapes."""
    rng = np.random.Generator(np.random.PCG64(seed))
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    img = 0.35 * np.sin(2 * np.pi * x / (size / 3.0)) \
        + 0.25 * np.sin(2 * np.pi * (x + 2 * y) / (size / 2.0))
    for _ in range(6):
        cy, cx = rng.uniform(0, size, size=2)
        s = rng.uniform(size / 10, size / 3)
        img += rng.uniform(-1.0, 1.0) * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * s * s))
    # a few hard-edged shapes for contour structure
    img[size // 5:size // 2, size // 6:size // 4] += 0.9
    disk = (x - 0.7 * size) ** 2 + (y - 0.3 * size) ** 2 < (size / 6.0) ** 2
    img[disk] -= 0.8
    tri = (x + y > 1.45 * size) & (x + y < 1.8 * size)
    img[tri] += 0.5
    lo, hi = img.min(), img.max()
    return 12.0 + (img - lo) / (hi - lo) * 230.0
