import numpy as np
import pytest

from contourdenoise import FilterConfig, MatchConfig, denoise


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the numba kernels once so timed tests measure steady state
    img = np.full((12, 12), 120.0)
    img[4, 4] = 255.0
    img[7, 2] = 0.0
    cfg = FilterConfig(match=MatchConfig(patch_size=3, neighbors=4, search_window="full"))
    denoise(img, cfg)
    denoise(img)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


def random_test_image(rng, h, w, impulse_fraction=0.15):
    """Integer-valued image with some true impulses; exact in float64 arithmetic."""
    img = rng.integers(5, 251, size=(h, w)).astype(np.float64)
    u = rng.random((h, w))
    img[u < impulse_fraction / 2] = 0.0
    img[(u >= impulse_fraction / 2) & (u < impulse_fraction)] = 255.0
    return img
