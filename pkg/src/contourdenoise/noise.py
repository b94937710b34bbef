"""Salt-and-pepper noise injection and impulse detection.

A pixel is corrupted independently with probability `density`; a corrupted
pixel becomes salt (near 255) with probability `salt_ratio`, otherwise pepper
(near 0). With detection half-width `delta` = 0 impulses are exactly 0 or 255;
with delta > 0, pepper values are drawn from [0, delta) and salt values from
(255 - delta, 255]. Detection flags a pixel iff its value falls in those bands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseConfig:
    density: float
    salt_ratio: float = 0.5
    delta: int = 0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")
        if not 0.0 <= self.salt_ratio <= 1.0:
            raise ValueError(f"salt_ratio must be in [0, 1], got {self.salt_ratio}")
        if not 0 <= self.delta < 128:
            raise ValueError(f"delta must be in [0, 128), got {self.delta}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


def inject_noise(img: np.ndarray, cfg: NoiseConfig) -> tuple[np.ndarray, np.ndarray]:
    """Corrupt `img` per `cfg`; returns (noisy image, ground-truth corruption mask).

    Per-pixel draws are made in row-major order from a PCG64 stream seeded with
    cfg.seed, so outputs are bit-identical across runs and platforms. The mask
    records every pixel the corruption draw selected, even when the impulse
    value happens to equal the original intensity.
    """
    img = np.asarray(img, dtype=np.float64)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    corrupted = rng.random(img.shape) < cfg.density
    salt = rng.random(img.shape) < cfg.salt_ratio
    if cfg.delta == 0:
        salt_values = np.full(img.shape, 255.0)
        pepper_values = np.zeros(img.shape)
    else:
        salt_values = rng.integers(256 - cfg.delta, 256, size=img.shape).astype(np.float64)
        pepper_values = rng.integers(0, cfg.delta, size=img.shape).astype(np.float64)
    noisy = np.where(corrupted, np.where(salt, salt_values, pepper_values), img)
    return noisy, corrupted


def detect_noise(img: np.ndarray, delta: int = 0) -> np.ndarray:
    """Boolean mask of impulse suspects: value < delta or value > 255 - delta.

    With delta = 0 this degenerates to flagging exactly the values 0 and 255.
    """
    if not 0 <= delta < 128:
        raise ValueError(f"delta must be in [0, 128), got {delta}")
    img = np.asarray(img, dtype=np.float64)
    if delta == 0:
        return (img == 0.0) | (img == 255.0)
    return (img < delta) | (img > 255.0 - delta)
