"""Compiled inner loops for candidate search and pixel regression.

Patches are precomputed as contiguous rows: P[y*w + x] holds the flat
(clamped) patch around center (y, x), and B[y*w + x] holds the same patch's
noise flags packed into 64-bit words so pairwise union counts reduce to
popcounts. Angle crops are read from an edge-padded 2-D map: a patch centered
at unpadded (y, x) spans padded rows y .. y+size-1.

Kernels are nogil so worker threads can run them on disjoint coordinate
chunks; every pixel's result depends only on immutable inputs, making outputs
independent of chunking and thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_HALF_PI = np.pi / 2
_PI = np.pi

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, nogil=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True, nogil=True, inline="always")
def _sum_smallest(buf, scratch, n, keep):
    """Exact sum of the `keep` smallest of buf[:n]; destroys both buffers.

    Three-way quickselect with a branchless partition pass (unconditional
    stores, masked increments): the value comparisons never become branches,
    which matters because impulse-vs-clean squared differences are bimodal and
    would defeat the branch predictor. Runs of equal values resolve through
    the pivot-count path, so all-equal buffers from flat regions terminate in
    one pass.
    """
    total = 0.0
    cur = buf
    other = scratch
    m = n
    k = keep
    while True:
        if k >= m:
            for i in range(m):
                total += cur[i]
            return total
        a = cur[0]
        b = cur[m >> 1]
        c = cur[m - 1]
        if b < a:
            a, b = b, a
        if c < a:
            a, c = c, a
        if c < b:
            b, c = c, b
        pivot = b
        low_count = 0
        high_count = 0
        eq_count = 0
        for i in range(m):
            v = cur[i]
            lt = v < pivot
            gt = v > pivot
            cur[low_count] = v
            other[high_count] = v
            low_count += lt
            high_count += gt
            eq_count += not (lt or gt)
        if k <= low_count:
            m = low_count
        elif k <= low_count + eq_count:
            for i in range(low_count):
                total += cur[i]
            return total + (k - low_count) * pivot
        else:
            for i in range(low_count):
                total += cur[i]
            total += eq_count * pivot
            k -= low_count + eq_count
            m = high_count
            cur, other = other, cur


@njit(cache=True, nogil=True, inline="always")
def trimmed_distance(P, B, t_idx, q_idx, n, buf, scratch):
    """Noise-trimmed mean of squared patch differences.

    The union count of flagged positions across both patches (capped at n-1)
    is dropped from the top of the squared differences; the rest are averaged.
    The result is a deterministic function of the flat diff sequence, so
    equal-content candidates score exactly equal.
    """
    noisy = 0
    for k in range(B.shape[1]):
        noisy += _popcount(B[t_idx, k] | B[q_idx, k])
    if noisy > n - 1:
        noisy = n - 1
    for i in range(n):
        d = P[t_idx, i] - P[q_idx, i]
        buf[i] = d * d
    keep = n - noisy
    return _sum_smallest(buf, scratch, n, keep) / keep


@njit(cache=True, nogil=True)
def stencil_sq_distance(pa, ty, tx, qy, qx, size):
    """Sum of squared angle differences, each wrapped into (-pi/2, pi/2]."""
    d2 = 0.0
    for dy in range(size):
        tr = ty + dy
        qr = qy + dy
        for dx in range(size):
            d = pa[tr, tx + dx] - pa[qr, qx + dx]
            wd = _HALF_PI - ((_HALF_PI - d) % _PI)
            d2 += wd * wd
    return d2


@njit(cache=True, nogil=True)
def find_candidates(P, B, pa, h, w, ty, tx, size, mm, window, stencil_metric,
                    best_y, best_x, best_d, buf, scratch):
    """Fill best_* with the mm nearest candidate centers, ascending distance.

    Candidates are every pixel of the (window x window) region centered on the
    target (whole image when window <= 0), excluding the target itself, visited
    in row-major order; ties keep the earlier candidate. Returns the number of
    candidates found (< mm only on tiny images).
    """
    if window <= 0:
        y0, y1, x0, x1 = 0, h - 1, 0, w - 1
    else:
        r = window // 2
        y0 = max(0, ty - r)
        y1 = min(h - 1, ty + r)
        x0 = max(0, tx - r)
        x1 = min(w - 1, tx + r)
    n = size * size
    t_idx = ty * w + tx
    count = 0
    for qy in range(y0, y1 + 1):
        row = qy * w
        for qx in range(x0, x1 + 1):
            if qy == ty and qx == tx:
                continue
            if stencil_metric:
                d = stencil_sq_distance(pa, ty, tx, qy, qx, size)
            else:
                d = trimmed_distance(P, B, t_idx, row + qx, n, buf, scratch)
            if count == mm and d >= best_d[count - 1]:
                continue
            # insert after any stored entry with the same distance (stable)
            pos = count if count < mm else mm - 1
            while pos > 0 and best_d[pos - 1] > d:
                best_d[pos] = best_d[pos - 1]
                best_y[pos] = best_y[pos - 1]
                best_x[pos] = best_x[pos - 1]
                pos -= 1
            best_d[pos] = d
            best_y[pos] = qy
            best_x[pos] = qx
            if count < mm:
                count += 1
    return count


@njit(cache=True, nogil=True)
def restore_pixels(P, B, pa, mask, prefiltered, coords, size, mm, window, sigma,
                   reciprocal_kernel, stencil_metric, out_values, out_fallback):
    """Restore each flagged coordinate (row-major (y, x) pairs in `coords`).

    For each target: find the mm nearest candidates, drop those whose center
    is flagged, weight the survivors by stencil-crop similarity, and write the
    weighted average of their center intensities. With no survivor, fall back
    to the prefiltered value and set the fallback flag.
    """
    h, w = mask.shape
    n = size * size
    center = (size // 2) * size + size // 2
    buf = np.empty(n, dtype=np.float64)
    scratch = np.empty(n, dtype=np.float64)
    best_y = np.empty(mm, dtype=np.int64)
    best_x = np.empty(mm, dtype=np.int64)
    best_d = np.empty(mm, dtype=np.float64)
    log_sigma = np.log(sigma)
    for i in range(coords.shape[0]):
        ty = coords[i, 0]
        tx = coords[i, 1]
        count = find_candidates(P, B, pa, h, w, ty, tx, size, mm, window,
                                stencil_metric, best_y, best_x, best_d, buf, scratch)
        acc = 0.0
        wsum = 0.0
        for j in range(count):
            qy = best_y[j]
            qx = best_x[j]
            if mask[qy, qx] != 0:
                continue  # flagged center would inject an impulse value
            d2 = stencil_sq_distance(pa, ty, tx, qy, qx, size)
            if reciprocal_kernel:
                s = np.exp(-d2 / sigma) / log_sigma
            else:
                s = np.exp(-d2 / sigma)
            wsum += s
            acc += s * P[qy * w + qx, center]
        if wsum > 0.0:
            v = acc / wsum
            # convex combination; clamp the odd half-ulp overshoot
            if v < 0.0:
                v = 0.0
            elif v > 255.0:
                v = 255.0
            out_values[i] = v
            out_fallback[i] = 0
        else:
            out_values[i] = prefiltered[ty, tx]
            out_fallback[i] = 1
