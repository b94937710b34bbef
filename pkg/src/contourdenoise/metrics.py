"""Image quality metrics: mean squared error and peak signal-to-noise ratio."""

from __future__ import annotations

import math

import numpy as np

PEAK = 255.0


def mse(a: np.ndarray, b: np.ndarray) -> float:
    """Mean squared intensity difference."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def psnr(reference: np.ndarray, test: np.ndarray) -> float:
    """10*log10(255^2 / MSE) in dB; math.inf for identical images."""
    err = mse(reference, test)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)
