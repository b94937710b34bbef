import math

import numpy as np
import pytest

import oracles
from contourdenoise import (
    NoiseConfig,
    adaptive_median_filter,
    inject_noise,
    median_filter,
    mse,
    psnr,
)
from scipy import ndimage


# --- median filter -----------------------------------------------------------

def test_median_constant_unchanged():
    img = np.full((10, 10), 50.0)
    assert np.array_equal(median_filter(img, 3), img)


def test_median_removes_single_impulse():
    img = np.full((7, 7), 50.0)
    img[3, 3] = 255.0
    assert (median_filter(img, 3) == 50.0).all()


def test_median_matches_oracle(rng):
    for k in (3, 5):
        img = rng.integers(0, 256, size=(8, 8)).astype(np.float64)
        assert np.array_equal(median_filter(img, k), oracles.median_filter(img, k))


def test_median_validates_window():
    with pytest.raises(ValueError):
        median_filter(np.zeros((4, 4)), 4)


# --- adaptive median filter --------------------------------------------------

def test_amf_passes_through_smooth_gradient():
    img = np.add.outer(np.arange(12.0), np.arange(12.0)) * 2.0
    out = adaptive_median_filter(img, 7)
    lo = ndimage.minimum_filter(img, size=3, mode="nearest")
    hi = ndimage.maximum_filter(img, size=3, mode="nearest")
    between = (lo < img) & (img < hi)
    assert np.array_equal(out[between], img[between])


def test_amf_removes_single_impulse():
    img = np.full((9, 9), 100.0)
    img[4, 4] = 0.0
    assert (adaptive_median_filter(img, 7) == 100.0).all()


def test_amf_restores_half_corrupted_constant():
    img = np.full((64, 64), 128.0)
    noisy, _ = inject_noise(img, NoiseConfig(density=0.5, seed=3))
    assert (adaptive_median_filter(noisy, 11) == 128.0).all()


def test_amf_output_within_max_window_extremes(rng):
    img = rng.integers(0, 256, size=(16, 16)).astype(np.float64)
    out = adaptive_median_filter(img, 7)
    lo = ndimage.minimum_filter(img, size=7, mode="nearest")
    hi = ndimage.maximum_filter(img, size=7, mode="nearest")
    assert (out >= lo).all() and (out <= hi).all()


def test_amf_validates_window():
    with pytest.raises(ValueError):
        adaptive_median_filter(np.zeros((4, 4)), 6)


# --- metrics -----------------------------------------------------------------

def test_mse_identical_is_zero():
    img = np.full((5, 5), 9.0)
    assert mse(img, img) == 0.0


def test_mse_uniform_difference():
    a = np.zeros((6, 6))
    assert mse(a, a + 16.0) == 256.0


def test_mse_matches_oracle(rng):
    a = rng.integers(0, 256, size=(9, 9)).astype(np.float64)
    b = rng.integers(0, 256, size=(9, 9)).astype(np.float64)
    assert mse(a, b) == pytest.approx(oracles.mse(a, b), rel=1e-12)


def test_mse_shape_mismatch():
    with pytest.raises(ValueError):
        mse(np.zeros((2, 2)), np.zeros((2, 3)))


def test_psnr_identical_is_infinite():
    img = np.full((4, 4), 30.0)
    assert math.isinf(psnr(img, img))


def test_psnr_extreme_difference_is_zero():
    a = np.zeros((4, 4))
    assert psnr(a, a + 255.0) == pytest.approx(0.0, abs=1e-12)


def test_psnr_uniform_difference_16():
    a = np.full((8, 8), 100.0)
    assert psnr(a, a + 16.0) == pytest.approx(24.0486, abs=1e-3)


def test_psnr_symmetric(rng):
    a = rng.integers(0, 256, size=(8, 8)).astype(np.float64)
    b = rng.integers(0, 256, size=(8, 8)).astype(np.float64)
    assert psnr(a, b) == psnr(b, a)


def test_psnr_decreases_with_growing_corruption(rng):
    clean = rng.integers(30, 226, size=(32, 32)).astype(np.float64)
    values = []
    for density in (0.05, 0.15, 0.3, 0.5):
        noisy, _ = inject_noise(clean, NoiseConfig(density=density, seed=11))
        values.append(psnr(clean, noisy))
    assert all(a > b for a, b in zip(values, values[1:]))
