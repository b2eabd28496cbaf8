from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from histlight.histogram import CountHistogram, nearest_bins
from histlight.imaging.channels import channel_histogram
from histlight.imaging.errors import ImageError
from histlight.imaging.types import ValueChannel

MASS_TOLERANCE = 1e-6


def matching_lut(source: CountHistogram, target: CountHistogram) -> NDArray[np.int64]:
    """Level mapping aligning the source CDF with the target CDF.

    Each level goes to the smallest target level whose CDF is nearest, so the
    mapping is non-decreasing.
    """
    if source.levels != target.levels:
        raise ImageError(
            "source and target histograms must share the level count",
            context={"source": source.levels, "target": target.levels},
        )
    if not target.mass > 0.0:
        raise ImageError("degenerate target histogram", context={"mass": target.mass})
    source_cdf = np.cumsum(source.bins) / source.mass
    target_cdf = np.cumsum(target.bins) / target.mass
    return nearest_bins(source_cdf, target_cdf)


def histogram_match(channel: ValueChannel, target: CountHistogram) -> ValueChannel:
    """Remap pixel levels so the channel's histogram approximates ``target``."""
    pixels = channel.pixel_count
    if abs(target.mass - pixels) > MASS_TOLERANCE * pixels:
        raise ImageError(
            "target histogram mass must equal the pixel count",
            context={"mass": target.mass, "pixels": pixels},
        )
    lut = matching_lut(channel_histogram(channel), target)
    return channel.with_levels(lut[channel.levels])


def equalization_lut(histogram: CountHistogram) -> NDArray[np.int64]:
    """t_i = round((l - 1) * CDF_i), half away from zero."""
    cdf = np.cumsum(histogram.bins) / histogram.total
    return np.floor((histogram.levels - 1) * cdf + 0.5).astype(np.int64)


def histogram_equalize(channel: ValueChannel) -> ValueChannel:
    lut = np.minimum(equalization_lut(channel_histogram(channel)), channel.num_levels - 1)
    return channel.with_levels(lut[channel.levels])


__all__ = [
    "equalization_lut",
    "histogram_equalize",
    "histogram_match",
    "matching_lut",
]
