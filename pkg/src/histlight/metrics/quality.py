from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray
from scipy import ndimage

from histlight.imaging import RgbImage, lightness, resize_nearest
from histlight.metrics.errors import MetricError

PEAK = 255.0
SSIM_SIGMA = 1.5
SSIM_RADIUS = 5
SSIM_MIN_SIDE = 2 * SSIM_RADIUS + 1
SSIM_C1 = (0.01 * PEAK) ** 2
SSIM_C2 = (0.03 * PEAK) ** 2
LOE_MAX_SIDE = 100
LOE_CHUNK = 1024

_LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])


def luma(image: RgbImage) -> NDArray[np.float64]:
    return image.pixels.astype(np.float64) @ _LUMA_WEIGHTS


def psnr(first: RgbImage, second: RgbImage) -> float:
    """Peak signal-to-noise ratio in dB over all channels; ``math.inf`` for identical images."""
    _require_same_shape(first, second, metric="psnr")
    diff = first.pixels.astype(np.float64) - second.pixels.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def ssim(first: RgbImage, second: RgbImage) -> float:
    """Single-scale SSIM on luma with an 11x11 Gaussian window (sigma 1.5).

    Windows that would overlap the image border are excluded from the mean.
    """
    _require_same_shape(first, second, metric="ssim")
    if min(first.height, first.width) < SSIM_MIN_SIDE:
        raise MetricError(
            "image too small for ssim",
            context={"shape": first.pixels.shape[:2], "min_side": SSIM_MIN_SIDE},
        )
    x = luma(first)
    y = luma(second)

    mu_x = _window_mean(x)
    mu_y = _window_mean(y)
    var_x = _window_mean(x * x) - mu_x * mu_x
    var_y = _window_mean(y * y) - mu_y * mu_y
    cov = _window_mean(x * y) - mu_x * mu_y

    numerator = (2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * cov + SSIM_C2)
    denominator = (mu_x * mu_x + mu_y * mu_y + SSIM_C1) * (var_x + var_y + SSIM_C2)
    ssim_map = numerator / denominator
    valid = ssim_map[SSIM_RADIUS:-SSIM_RADIUS, SSIM_RADIUS:-SSIM_RADIUS]
    return float(valid.mean())


def loe(original: RgbImage, enhanced: RgbImage) -> float:
    """Lightness order error on a nearest-neighbour grid of at most 100x100 pixels.

    Counts, for every ordered pixel pair, whether the relative order of max-RGB
    lightness flipped between the two images, averaged over sampled pixels.
    """
    _require_same_shape(original, enhanced, metric="loe")
    width = min(original.width, LOE_MAX_SIDE)
    height = min(original.height, LOE_MAX_SIDE)
    before = lightness(resize_nearest(original, width, height)).ravel()
    after = lightness(resize_nearest(enhanced, width, height)).ravel()

    flips = 0
    for start in range(0, before.size, LOE_CHUNK):
        stop = start + LOE_CHUNK
        order_before = before[start:stop, None] >= before[None, :]
        order_after = after[start:stop, None] >= after[None, :]
        flips += int(np.count_nonzero(order_before ^ order_after))
    return flips / before.size


def _window_mean(values: NDArray[np.float64]) -> NDArray[np.float64]:
    return ndimage.gaussian_filter(
        values, sigma=SSIM_SIGMA, truncate=SSIM_RADIUS / SSIM_SIGMA, mode="reflect"
    )


def _require_same_shape(first: RgbImage, second: RgbImage, *, metric: str) -> None:
    if first.pixels.shape != second.pixels.shape:
        raise MetricError(
            "image dimensions must match",
            context={
                "metric": metric,
                "first": first.pixels.shape,
                "second": second.pixels.shape,
            },
        )


__all__ = ["loe", "luma", "psnr", "ssim"]
