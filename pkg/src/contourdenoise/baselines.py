"""Reference denoisers: plain median filter and the two-stage adaptive median.

Both use clamped (nearest-edge) boundaries like the rest of the pipeline.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage


def median_filter(img: np.ndarray, k: int = 3) -> np.ndarray:
    """Median of the k x k clamped neighborhood at every pixel."""
    if k < 3 or k % 2 == 0:
        raise ValueError(f"window must be odd and >= 3, got {k}")
    img = np.asarray(img, dtype=np.float64)
    return ndimage.median_filter(img, size=k, mode="nearest")


def adaptive_median_filter(img: np.ndarray, max_window: int = 11) -> np.ndarray:
    """Classic two-stage adaptive median filter.

    Grow the window from 3x3: once the window median lies strictly between the
    window min and max, output the center pixel if it is strictly between min
    and max, otherwise the median; if the window reaches max_window without a
    usable median, output that window's median.
    """
    if max_window < 3 or max_window % 2 == 0:
        raise ValueError(f"max_window must be odd and >= 3, got {max_window}")
    img = np.asarray(img, dtype=np.float64)
    out = np.empty_like(img)
    resolved = np.zeros(img.shape, dtype=bool)
    med = img
    for k in range(3, max_window + 1, 2):
        med = ndimage.median_filter(img, size=k, mode="nearest")
        lo = ndimage.minimum_filter(img, size=k, mode="nearest")
        hi = ndimage.maximum_filter(img, size=k, mode="nearest")
        usable = (lo < med) & (med < hi) & ~resolved
        center_ok = (lo < img) & (img < hi)
        out[usable & center_ok] = img[usable & center_ok]
        out[usable & ~center_ok] = med[usable & ~center_ok]
        resolved |= usable
        if resolved.all():
            break
    out[~resolved] = med[~resolved]
    return out
