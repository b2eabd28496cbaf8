"""Pixel-domain plumbing around the histogram model."""

from histlight.imaging.channels import (
    GradientOperator,
    PriorOrientation,
    channel_histogram,
    gradient_channel,
    quantize_value_channel,
    reflectance_prior_histogram,
)
from histlight.imaging.color import hsv_to_rgb, lightness, rgb_to_hsv
from histlight.imaging.errors import EnhancementError, ImageError, ImageIOError
from histlight.imaging.io import read_image, resize_nearest, write_image
from histlight.imaging.matching import (
    equalization_lut,
    histogram_equalize,
    histogram_match,
    matching_lut,
)
from histlight.imaging.pipeline import (
    EnhancementEngine,
    EnhancementResult,
    MatchingTarget,
    StageTimings,
    enhance,
    equalize_image,
)
from histlight.imaging.types import HsvImage, RgbImage, ValueChannel

__all__ = [
    "EnhancementEngine",
    "EnhancementError",
    "EnhancementResult",
    "GradientOperator",
    "HsvImage",
    "ImageError",
    "ImageIOError",
    "MatchingTarget",
    "PriorOrientation",
    "RgbImage",
    "StageTimings",
    "ValueChannel",
    "channel_histogram",
    "enhance",
    "equalization_lut",
    "equalize_image",
    "gradient_channel",
    "histogram_equalize",
    "histogram_match",
    "hsv_to_rgb",
    "lightness",
    "matching_lut",
    "quantize_value_channel",
    "read_image",
    "reflectance_prior_histogram",
    "resize_nearest",
    "rgb_to_hsv",
    "write_image",
]
