"""Salt-and-pepper impulse denoising by contour-orientation guided patch regression."""

from .baselines import adaptive_median_filter, median_filter
from .filtering import (
    FilterConfig,
    DenoiseReport,
    denoise,
    restore_pixel,
    stencil_distance,
    stencil_similarity,
    stencil_weights,
)
from .image import (
    BoundaryPolicy,
    ImageFormatError,
    PatchRef,
    extract_patch,
    load_image,
    load_image_file,
    pixel_at,
    save_image,
    save_image_file,
)
from .matching import (
    MatchConfig,
    ScoredCandidate,
    estimate_noisy_count,
    find_similar,
    weighted_distance,
)
from .metrics import mse, psnr
from .noise import NoiseConfig, detect_noise, inject_noise
from .stencils import (
    StencilLabel,
    StencilMap,
    StencilTemplate,
    best_stencil,
    encode_stencil_map_pgm,
    label_stencils,
    median_prefilter,
    stencil_map,
    stencil_response,
    template_bank,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryPolicy",
    "DenoiseReport",
    "FilterConfig",
    "ImageFormatError",
    "MatchConfig",
    "NoiseConfig",
    "PatchRef",
    "ScoredCandidate",
    "StencilLabel",
    "StencilMap",
    "StencilTemplate",
    "adaptive_median_filter",
    "best_stencil",
    "denoise",
    "detect_noise",
    "encode_stencil_map_pgm",
    "estimate_noisy_count",
    "extract_patch",
    "find_similar",
    "inject_noise",
    "label_stencils",
    "load_image",
    "load_image_file",
    "median_filter",
    "median_prefilter",
    "mse",
    "pixel_at",
    "psnr",
    "restore_pixel",
    "save_image",
    "save_image_file",
    "stencil_distance",
    "stencil_map",
    "stencil_response",
    "stencil_similarity",
    "stencil_weights",
    "template_bank",
    "weighted_distance",
]
