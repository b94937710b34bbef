"""Contour-orientation estimation from a bank of 24 directional 3x3 stencils.

Each stencil pairs the center pixel (-2 entry) with two neighbors (+1 entries);
its response at a pixel is the sum of absolute intensity differences between
the center and those two neighbors, a discrete total-variation measure along
the stencil's direction. The template with the minimal response gives the
local contour orientation. Impulse pixels are median-prefiltered first so the
estimate is not driven by noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image import BoundaryPolicy, pixel_at

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
DIAGONAL = "diagonal"
DIRECTION_CLASSES = (HORIZONTAL, VERTICAL, DIAGONAL)

MEDIAN_WINDOW_CAP = 21
MEDIAN_FALLBACK = 128.0


@dataclass(frozen=True)
class StencilTemplate:
    direction_class: str
    index_in_class: int  # 1..8 within the class
    angle: float         # radians, line orientation (period pi)
    matrix: np.ndarray   # 3x3 int, center -2, exactly two +1 entries


class StencilLabel(NamedTuple):
    template_id: int
    angle: float
    response: float


_ATAN_HALF = math.atan(0.5)
_ATAN_TWO = math.atan(2.0)

# direction class, per-class angles, per-class 3x3 matrices (row-major)
_BANK_TABLE = (
    (HORIZONTAL,
     (math.pi - _ATAN_HALF, _ATAN_HALF, math.pi / 8, 7 * math.pi / 8,
      -math.pi + _ATAN_HALF, -_ATAN_HALF, -math.pi / 8, -7 * math.pi / 8),
     (((1, 0, 0), (0, -2, 1), (0, 0, 0)),
      ((0, 0, 1), (1, -2, 0), (0, 0, 0)),
      ((0, 0, 1), (0, -2, 1), (0, 0, 0)),
      ((1, 0, 0), (1, -2, 0), (0, 0, 0)),
      ((0, 0, 0), (0, -2, 1), (1, 0, 0)),
      ((0, 0, 0), (1, -2, 0), (0, 0, 1)),
      ((0, 0, 0), (0, -2, 1), (0, 0, 1)),
      ((0, 0, 0), (1, -2, 0), (1, 0, 0)))),
    (VERTICAL,
     (-math.pi + _ATAN_TWO, -_ATAN_TWO, 3 * math.pi / 8, 5 * math.pi / 8,
      math.pi - _ATAN_TWO, _ATAN_TWO, -3 * math.pi / 8, -5 * math.pi / 8),
     (((0, 1, 0), (0, -2, 0), (1, 0, 0)),
      ((0, 1, 0), (0, -2, 0), (0, 0, 1)),
      ((0, 1, 1), (0, -2, 0), (0, 0, 0)),
      ((1, 1, 0), (0, -2, 0), (0, 0, 0)),
      ((1, 0, 0), (0, -2, 0), (0, 1, 0)),
      ((0, 0, 1), (0, -2, 0), (0, 1, 0)),
      ((0, 0, 0), (0, -2, 0), (0, 1, 1)),
      ((0, 0, 0), (0, -2, 0), (1, 1, 0)))),
    (DIAGONAL,
     (6 * math.pi / 8, 2 * math.pi / 8, -6 * math.pi / 8, -2 * math.pi / 8,
      4 * math.pi / 8, math.pi, 0.0, -4 * math.pi / 8),
     (((0, 1, 0), (1, -2, 0), (0, 0, 0)),
      ((0, 1, 0), (0, -2, 1), (0, 0, 0)),
      ((0, 0, 0), (1, -2, 0), (0, 1, 0)),
      ((0, 0, 0), (0, -2, 1), (0, 1, 0)),
      ((1, 0, 1), (0, -2, 0), (0, 0, 0)),
      ((1, 0, 0), (0, -2, 0), (1, 0, 0)),
      ((0, 0, 1), (0, -2, 0), (0, 0, 1)),
      ((0, 0, 0), (0, -2, 0), (1, 0, 1)))),
)


def _build_bank() -> tuple[StencilTemplate, ...]:
    bank = []
    for direction, angles, matrices in _BANK_TABLE:
        for k, (angle, rows) in enumerate(zip(angles, matrices), start=1):
            m = np.array(rows, dtype=np.int64)
            m.setflags(write=False)
            bank.append(StencilTemplate(direction, k, float(angle), m))
    return tuple(bank)


_BANK = _build_bank()

#: angle of each template, indexed by bank id
TEMPLATE_ANGLES = np.array([t.angle for t in _BANK])
TEMPLATE_ANGLES.setflags(write=False)


def template_offsets(tpl: StencilTemplate) -> list[tuple[int, int]]:
    """The two (dy, dx) offsets carrying +1 entries, in row-major matrix order."""
    return [(r - 1, c - 1)
            for r in range(3) for c in range(3) if tpl.matrix[r, c] == 1]


#: (24, 2, 2) array of the two (dy, dx) offsets per template, for fast kernels
TEMPLATE_OFFSETS = np.array([template_offsets(t) for t in _BANK], dtype=np.int64)
TEMPLATE_OFFSETS.setflags(write=False)


def template_bank() -> tuple[StencilTemplate, ...]:
    """All 24 templates, ordered horizontal 1..8, vertical 1..8, diagonal 1..8."""
    return _BANK


def median_prefilter(img: np.ndarray, mask: np.ndarray) -> tuple[np.ndarray, int]:
    """Replace flagged pixels by the median of nearby unflagged pixels.

    Each flagged pixel takes the median of the unflagged pixels in the
    smallest centered odd window (3x3 growing by 2 up to 21x21) that contains
    at least one unflagged pixel; windows are intersected with the image.
    Replacements read only the original image, so the filter does not cascade
    and is idempotent for a fixed mask. Even-sized samples use the lower-middle
    element so outputs stay in the input's intensity alphabet.

    Returns (filtered image, count of pixels that fell back to mid-gray 128
    because the capped window held no unflagged pixel).
    """
    img = np.asarray(img, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != img.shape:
        raise ValueError(f"mask shape {mask.shape} != image shape {img.shape}")
    out = img.copy()
    if not mask.any():
        return out, 0

    ys, xs = np.nonzero(mask)
    # 3x3 pass for all flagged pixels at once; NaN marks flagged or off-image
    padded = np.pad(np.where(mask, np.nan, img), 1, constant_values=np.nan)
    windows = sliding_window_view(padded, (3, 3))
    vals = windows[ys, xs].reshape(len(ys), 9)
    order = np.sort(vals, axis=1)  # NaNs sort to the end
    counts = 9 - np.isnan(vals).sum(axis=1)
    hit = counts > 0
    hit_rows = order[hit]
    out[ys[hit], xs[hit]] = hit_rows[np.arange(len(hit_rows)), (counts[hit] - 1) // 2]

    warnings = 0
    h, w = img.shape
    for y, x in zip(ys[~hit], xs[~hit]):
        value = MEDIAN_FALLBACK
        for k in range(5, MEDIAN_WINDOW_CAP + 1, 2):
            r = k // 2
            ysl = slice(max(0, y - r), y + r + 1)
            xsl = slice(max(0, x - r), x + r + 1)
            clean = img[ysl, xsl][~mask[ysl, xsl]]
            if clean.size:
                value = float(np.sort(clean)[(clean.size - 1) // 2])
                break
        else:
            warnings += 1
        out[y, x] = value
    return out, warnings


def stencil_response(img: np.ndarray, x: int, y: int, tpl: StencilTemplate,
                     policy: BoundaryPolicy = BoundaryPolicy.CLAMP) -> float:
    """Sum of |neighbor - center| over the template's two +1 offsets."""
    center = pixel_at(img, x, y, policy)
    total = 0.0
    for dy, dx in template_offsets(tpl):
        total += abs(pixel_at(img, x + dx, y + dy, policy) - center)
    return total


def best_stencil(img: np.ndarray, x: int, y: int,
                 policy: BoundaryPolicy = BoundaryPolicy.CLAMP) -> StencilLabel:
    """Template with minimal response at (x, y); ties go to the lowest bank id."""
    best_id = 0
    best = stencil_response(img, x, y, _BANK[0], policy)
    for tid in range(1, len(_BANK)):
        r = stencil_response(img, x, y, _BANK[tid], policy)
        if r < best:
            best = r
            best_id = tid
    return StencilLabel(best_id, float(TEMPLATE_ANGLES[best_id]), best)


@dataclass
class StencilMap:
    """Per-pixel winning template over an image; patch stencils crop this map."""

    template_ids: np.ndarray  # (h, w) int16
    responses: np.ndarray     # (h, w) float64

    @property
    def height(self) -> int:
        return self.template_ids.shape[0]

    @property
    def width(self) -> int:
        return self.template_ids.shape[1]

    @property
    def angles(self) -> np.ndarray:
        return TEMPLATE_ANGLES[self.template_ids]

    def label_at(self, x: int, y: int) -> StencilLabel:
        tid = int(self.template_ids[y, x])
        return StencilLabel(tid, float(TEMPLATE_ANGLES[tid]), float(self.responses[y, x]))


def label_stencils(img: np.ndarray) -> StencilMap:
    """Vectorized best_stencil over every pixel of an (already clean) image."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    padded = np.pad(img, 1, mode="edge")
    # |shifted - center| planes for the 8 neighbor offsets
    diff = {}
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy == 0 and dx == 0:
                continue
            diff[(dy, dx)] = np.abs(padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w] - img)

    (dy1, dx1), (dy2, dx2) = TEMPLATE_OFFSETS[0]
    best = diff[(dy1, dx1)] + diff[(dy2, dx2)]
    ids = np.zeros((h, w), dtype=np.int16)
    for tid in range(1, len(_BANK)):
        (dy1, dx1), (dy2, dx2) = TEMPLATE_OFFSETS[tid]
        resp = diff[(dy1, dx1)] + diff[(dy2, dx2)]
        better = resp < best  # strict: ties keep the lower bank id
        ids[better] = tid
        best = np.where(better, resp, best)
    return StencilMap(ids, best)


def stencil_map(img: np.ndarray, mask: np.ndarray,
                policy: BoundaryPolicy = BoundaryPolicy.CLAMP) -> tuple[StencilMap, int]:
    """Median-prefilter flagged pixels, then label every pixel.

    Returns (map, prefilter warning count).
    """
    prefiltered, warnings = median_prefilter(img, mask)
    return label_stencils(prefiltered), warnings


def encode_stencil_map_pgm(smap: StencilMap) -> bytes:
    """Debug dump: template ids scaled x10 as a PGM image."""
    from .image import save_image

    return save_image(smap.template_ids.astype(np.float64) * 10.0, "pgm")
