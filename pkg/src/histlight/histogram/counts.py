from __future__ import annotations

from typing import Protocol, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from histlight.histogram.errors import HistogramError, HistogramShapeError
from histlight.histogram.types import DEFAULT_LEVELS, CountHistogram, LocationVector


class SupportsLevels(Protocol):
    @property
    def levels(self) -> NDArray[np.int64]: ...


ChannelLike = Union[SupportsLevels, ArrayLike]


def compute_count_histogram(
    channel: ChannelLike, levels: int = DEFAULT_LEVELS
) -> CountHistogram:
    """Count pixels per gray level; the total is the pixel count."""
    raw = getattr(channel, "levels", channel)
    values = np.asarray(raw)
    if values.size == 0:
        raise HistogramError("empty input", context={"shape": values.shape})
    if levels < 1:
        raise HistogramError("levels must be positive", context={"levels": levels})
    if not np.issubdtype(values.dtype, np.integer):
        if not np.all(np.equal(np.mod(values, 1), 0)):
            raise HistogramError("channel levels must be integers")
        values = values.astype(np.int64)
    flat = values.ravel()
    low, high = int(flat.min()), int(flat.max())
    if low < 0 or high > levels - 1:
        raise HistogramError(
            "channel levels out of range",
            context={"levels": levels, "min": low, "max": high},
        )
    counts = np.bincount(flat.astype(np.int64), minlength=levels)
    return CountHistogram(bins=counts.astype(np.float64), total=float(flat.size))


def normalize_to_probability(histogram: CountHistogram) -> NDArray[np.float64]:
    """Per-level probability bins / N."""
    if histogram.total <= 0.0:
        raise HistogramError("histogram total must be positive")
    return histogram.bins / histogram.total


def uniform_locations(levels: int) -> LocationVector:
    """Bin centers k / (l - 1)."""
    if levels < 2:
        raise HistogramError("at least two levels are required", context={"levels": levels})
    return LocationVector(locs=np.arange(levels, dtype=np.float64) / (levels - 1))


def chi_square_distance(first: CountHistogram, second: CountHistogram) -> float:
    """Symmetric chi-square distance between the probability-normalized histograms."""
    if first.levels != second.levels:
        raise HistogramShapeError(
            "histograms must share the level count",
            context={"first": first.levels, "second": second.levels},
        )
    p = first.bins / first.mass if first.mass > 0.0 else first.bins
    q = second.bins / second.mass if second.mass > 0.0 else second.bins
    denom = p + q
    mask = denom > 0.0
    return float(np.sum((p[mask] - q[mask]) ** 2 / denom[mask]))


__all__ = [
    "chi_square_distance",
    "compute_count_histogram",
    "normalize_to_probability",
    "uniform_locations",
]
