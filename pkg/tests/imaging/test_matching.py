from __future__ import annotations

import numpy as np
import pytest

from histlight.histogram import CountHistogram
from histlight.imaging import (
    ImageError,
    ValueChannel,
    channel_histogram,
    equalization_lut,
    histogram_equalize,
    histogram_match,
    matching_lut,
)


def _channel(seed: int, levels: int = 256, high: int = 256) -> ValueChannel:
    rng = np.random.default_rng(seed)
    return ValueChannel(levels=rng.integers(0, high, size=(24, 24)), num_levels=levels)


def test_matching_to_own_histogram_is_identity() -> None:
    channel = _channel(1, high=90)

    matched = histogram_match(channel, channel_histogram(channel))

    assert matched.levels.tolist() == channel.levels.tolist()


def test_matching_to_uniform_target_agrees_with_equalization() -> None:
    channel = _channel(2, high=120)
    pixels = channel.pixel_count
    uniform = CountHistogram(bins=np.full(256, pixels / 256), total=float(pixels))

    matched = histogram_match(channel, uniform)
    equalized = histogram_equalize(channel)

    assert int(np.max(np.abs(matched.levels - equalized.levels))) <= 1


def test_constant_channel_matches_onto_spike() -> None:
    channel = ValueChannel(levels=np.full((5, 5), 12))
    bins = np.zeros(256)
    bins[200] = 25.0

    matched = histogram_match(channel, CountHistogram(bins=bins, total=25.0))

    assert np.all(matched.levels == 200)


def test_matching_lut_is_non_decreasing() -> None:
    source = channel_histogram(_channel(3, high=60))
    target = channel_histogram(_channel(4))

    lut = matching_lut(source, target)

    assert np.all(np.diff(lut) >= 0)


def test_target_mass_must_match_pixel_count() -> None:
    channel = _channel(5)
    with pytest.raises(ImageError, match="pixel count"):
        histogram_match(channel, CountHistogram(bins=np.ones(256), total=576.0))


def test_degenerate_target_is_rejected() -> None:
    source = channel_histogram(_channel(6))
    with pytest.raises(ImageError, match="degenerate target"):
        matching_lut(source, CountHistogram(bins=np.zeros(256), total=576.0))


def test_equalization_of_uniform_histogram_is_near_identity() -> None:
    histogram = CountHistogram(bins=np.full(256, 4.0), total=1024.0)
    lut = equalization_lut(histogram)
    assert int(np.max(np.abs(lut - np.arange(256)))) <= 1


def test_two_level_equalization() -> None:
    levels = np.zeros((4, 4), dtype=np.int64)
    levels[0, :] = 255

    equalized = histogram_equalize(ValueChannel(levels=levels))

    assert equalized.levels[1, 0] == round(0.75 * 255)
    assert equalized.levels[0, 0] == 255


def test_equalization_matches_cdf_oracle() -> None:
    channel = _channel(7, levels=8, high=8)
    counts = np.bincount(channel.levels.ravel(), minlength=8)

    equalized = histogram_equalize(channel)

    running = 0
    mapping = []
    for count in counts:
        running += int(count)
        mapping.append(int(np.floor(7 * (running / channel.pixel_count) + 0.5)))
    assert equalized.levels.tolist() == np.array(mapping)[channel.levels].tolist()
