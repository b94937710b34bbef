"""Independent brute-force reference implementations used to check the library.

Everything here is deliberately naive (python loops, literal definitions) and
shares no code with the package internals.
"""

import numpy as np


def clamp_pixel(img, x, y):
    h, w = img.shape
    return img[min(max(y, 0), h - 1), min(max(x, 0), w - 1)]


def flat_patch(img, cx, cy, size):
    r = size // 2
    return [clamp_pixel(img, cx + dx, cy + dy)
            for dy in range(-r, r + 1) for dx in range(-r, r + 1)]


def weighted_distance(p, q, n_noisy):
    """Sort squared diffs descending, zero-weight the first n_noisy, average rest."""
    n = len(p)
    d2 = sorted((float(a - b) ** 2 for a, b in zip(p, q)), reverse=True)
    weights = [0.0] * n_noisy + [1.0 / (n - n_noisy)] * (n - n_noisy)
    return sum(w * d for w, d in zip(weights, d2))


def noisy_union_count(mask, cx, cy, qx, qy, size):
    a = flat_patch(mask.astype(float), cx, cy, size)
    b = flat_patch(mask.astype(float), qx, qy, size)
    count = sum(1 for u, v in zip(a, b) if u > 0 or v > 0)
    return min(count, size * size - 1)


def stencil_response(img, x, y, matrix):
    """Enumerate the +1 cells of the 3x3 matrix literal."""
    center = clamp_pixel(img, x, y)
    total = 0.0
    for r in range(3):
        for c in range(3):
            if matrix[r][c] == 1:
                total += abs(clamp_pixel(img, x + c - 1, y + r - 1) - center)
    return total


def best_stencil(img, x, y, matrices):
    responses = [stencil_response(img, x, y, m) for m in matrices]
    best = min(responses)
    return responses.index(best), best


def find_similar(img, mask, cx, cy, size, mm, window=None):
    """Exhaustive scorer: every center, sorted by (distance, row-major index)."""
    h, w = img.shape
    if window is None:
        y0, y1, x0, x1 = 0, h - 1, 0, w - 1
    else:
        r = window // 2
        y0, y1 = max(0, cy - r), min(h - 1, cy + r)
        x0, x1 = max(0, cx - r), min(w - 1, cx + r)
    target = flat_patch(img, cx, cy, size)
    scored = []
    for qy in range(y0, y1 + 1):
        for qx in range(x0, x1 + 1):
            if qx == cx and qy == cy:
                continue
            nn = noisy_union_count(mask, cx, cy, qx, qy, size)
            d = weighted_distance(target, flat_patch(img, qx, qy, size), nn)
            scored.append((d, qy * w + qx, qx, qy))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [(x, y, d) for d, _, x, y in scored[:mm]]


def median_filter(img, k):
    h, w = img.shape
    out = np.empty_like(img, dtype=float)
    r = k // 2
    for y in range(h):
        for x in range(w):
            values = sorted(clamp_pixel(img, x + dx, y + dy)
                            for dy in range(-r, r + 1) for dx in range(-r, r + 1))
            out[y, x] = values[len(values) // 2]
    return out


def mse(a, b):
    total = 0.0
    h, w = a.shape
    for y in range(h):
        for x in range(w):
            diff = float(a[y, x]) - float(b[y, x])
            total += diff * diff
    return total / (h * w)


def wrapped_angle_sq_sum(angles_a, angles_b):
    total = 0.0
    for u, v in zip(np.asarray(angles_a).ravel(), np.asarray(angles_b).ravel()):
        d = float(u) - float(v)
        while d <= -np.pi / 2:
            d += np.pi
        while d > np.pi / 2:
            d -= np.pi
        total += d * d
    return total
