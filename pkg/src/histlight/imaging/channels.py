from __future__ import annotations

from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy import ndimage

from histlight.histogram import CountHistogram, compute_count_histogram
from histlight.imaging.errors import ImageError
from histlight.imaging.types import HsvImage, ValueChannel

GradientOperator = Literal["forward", "sobel"]
PriorOrientation = Literal["inverted", "direct"]

SOBEL_NORMALIZER = 4.0


def quantize_value_channel(image: HsvImage, levels: int) -> ValueChannel:
    """Round v * (l - 1) half away from zero."""
    if levels < 2:
        raise ImageError("levels must be at least 2", context={"levels": levels})
    quantized = np.floor(image.v * (levels - 1) + 0.5).astype(np.int64)
    return ValueChannel(levels=np.clip(quantized, 0, levels - 1), num_levels=levels)


def dequantize_value_channel(channel: ValueChannel) -> NDArray[np.float64]:
    return channel.levels.astype(np.float64) / (channel.num_levels - 1)


def gradient_channel(
    channel: ValueChannel, operator: GradientOperator = "forward"
) -> ValueChannel:
    """L1 gradient magnitude clamped to [0, l - 1].

    ``forward`` uses forward differences with zero on the last row and column;
    ``sobel`` uses Sobel responses scaled so a unit step yields one level.
    """
    values = channel.levels.astype(np.float64)
    if operator == "forward":
        dx = np.zeros_like(values)
        dy = np.zeros_like(values)
        dx[:, :-1] = values[:, 1:] - values[:, :-1]
        dy[:-1, :] = values[1:, :] - values[:-1, :]
        magnitude = np.abs(dx) + np.abs(dy)
    elif operator == "sobel":
        dx = ndimage.sobel(values, axis=1, mode="nearest")
        dy = ndimage.sobel(values, axis=0, mode="nearest")
        magnitude = np.floor((np.abs(dx) + np.abs(dy)) / SOBEL_NORMALIZER + 0.5)
    else:
        raise ImageError("unknown gradient operator", context={"operator": operator})
    clamped = np.minimum(magnitude, channel.num_levels - 1).astype(np.int64)
    return channel.with_levels(clamped)


def channel_histogram(channel: ValueChannel) -> CountHistogram:
    return compute_count_histogram(channel, channel.num_levels)


def reflectance_prior_histogram(
    channel: ValueChannel,
    *,
    operator: GradientOperator = "forward",
    orientation: PriorOrientation = "inverted",
) -> CountHistogram:
    """Histogram used as the reflectance prior and starting point.

    ``inverted`` counts l - 1 - |grad| so that flat regions sit at reflectance 1;
    ``direct`` counts the gradient magnitudes themselves.
    """
    gradient = gradient_channel(channel, operator)
    if orientation == "inverted":
        gradient = gradient.with_levels(channel.num_levels - 1 - gradient.levels)
    elif orientation != "direct":
        raise ImageError("unknown prior orientation", context={"orientation": orientation})
    return channel_histogram(gradient)


__all__ = [
    "GradientOperator",
    "PriorOrientation",
    "channel_histogram",
    "dequantize_value_channel",
    "gradient_channel",
    "quantize_value_channel",
    "reflectance_prior_histogram",
]
