from __future__ import annotations

import itertools
from typing import Callable

import numpy as np
import pytest

from histlight.histogram import (
    build_index_map,
    estimate_histogram,
    pair_count_matrix,
    pair_location_matrix,
    uniform_locations,
)
from histlight.imaging import (
    EnhancementEngine,
    EnhancementError,
    RgbImage,
    enhance,
    equalize_image,
    histogram_equalize,
    quantize_value_channel,
    rgb_to_hsv,
)
from histlight.reprocess import GammaParam
from histlight.retinex import OptimizationError, OptParams

FIXTURES = ["ramp_image", "dark_ramp_image", "constant_image", "textured_image"]


def _mean_v(image: RgbImage) -> float:
    return float(np.mean(quantize_value_channel(rgb_to_hsv(image), 256).levels))


@pytest.mark.parametrize("fixture", FIXTURES)
def test_gamma_one_leaves_value_channel_nearly_unchanged(
    fixture: str, request: pytest.FixtureRequest
) -> None:
    image = request.getfixturevalue(fixture)

    result = EnhancementEngine().run(image, gamma=GammaParam(gamma=1.0))

    delta = np.abs(result.enhanced_channel.levels - result.value_channel.levels)
    assert float(delta.mean()) <= 2.0


@pytest.mark.parametrize("fixture", ["textured_image", "noisy_image"])
def test_gamma_one_keeps_textured_value_channel(
    fixture: str, request: pytest.FixtureRequest
) -> None:
    image = request.getfixturevalue(fixture)

    result = EnhancementEngine().run(image, gamma=GammaParam(gamma=1.0))

    assert np.array_equal(result.enhanced_channel.levels, result.value_channel.levels)
    np.testing.assert_allclose(
        result.matching_target.bins, result.observed.bins, rtol=0.0, atol=1e-9
    )


def test_composed_target_matches_the_recomposed_histogram(textured_image: RgbImage) -> None:
    engine = EnhancementEngine(matching_target="composed")

    result = engine.run(textured_image, gamma=GammaParam(gamma=1.0))

    counts = pair_count_matrix(result.decomposition.reflectance, result.decomposition.illumination)
    locs = uniform_locations(256)
    plain = estimate_histogram(counts, build_index_map(pair_location_matrix(locs, locs), locs))
    assert result.matching_target is result.enhanced_histogram
    assert result.enhanced_histogram.bins.tolist() == plain.bins.tolist()


@pytest.mark.parametrize("target", ["anchored", "composed"])
def test_both_matching_targets_brighten_textured_scenes(
    target: str, textured_image: RgbImage
) -> None:
    engine = EnhancementEngine(matching_target=target)  # type: ignore[arg-type]

    result = engine.run(textured_image, gamma=GammaParam(gamma=2.2))

    assert result.enhanced_channel.levels.mean() > result.value_channel.levels.mean()


@pytest.mark.parametrize("fixture", ["ramp_image", "dark_ramp_image", "noisy_image"])
def test_brightening_is_monotone_in_gamma(fixture: str, request: pytest.FixtureRequest) -> None:
    image = request.getfixturevalue(fixture)
    engine = EnhancementEngine()

    means = [
        float(np.mean(engine.run(image, gamma=GammaParam(gamma=g)).enhanced_channel.levels))
        for g in (1.0, 1.5, 2.2, 5.0)
    ]

    for darker, brighter in zip(means, means[1:]):
        assert brighter >= darker - 1.0


@pytest.mark.parametrize("fixture", ["ramp_image", "noisy_image"])
def test_default_gamma_brightens_low_light_images(
    fixture: str, request: pytest.FixtureRequest
) -> None:
    image = request.getfixturevalue(fixture)
    assert _mean_v(enhance(image)) > _mean_v(image)


def test_constant_color_is_lifted_by_gamma(
    gray_image: Callable[[np.ndarray], RgbImage]
) -> None:
    image = gray_image(np.full((12, 12), 73))

    output = enhance(image, OptParams(), GammaParam(gamma=2.2))

    values = output.pixels.reshape(-1, 3)
    assert np.all(values == values[0])
    assert abs(int(values[0, 0]) - 255 * (73 / 255) ** (1 / 2.2)) <= 1.0


def test_hue_and_saturation_pass_through(dark_ramp_image: RgbImage) -> None:
    result = EnhancementEngine().run(dark_ramp_image)

    before = rgb_to_hsv(dark_ramp_image)
    after = rgb_to_hsv(result.image)
    bright = result.enhanced_channel.levels >= 40

    assert bright.any()
    assert np.max(np.abs(after.s[bright] - before.s[bright])) <= 0.05
    assert np.max(np.abs(after.h[bright] - before.h[bright])) <= 3.0


@pytest.mark.parametrize("fixture", ["ramp_image", "noisy_image", "constant_image"])
def test_histograms_conserve_pixel_count(fixture: str, request: pytest.FixtureRequest) -> None:
    image = request.getfixturevalue(fixture)

    result = EnhancementEngine().run(image)

    total = float(image.width * image.height)
    for histogram in (
        result.decomposition.illumination,
        result.decomposition.reflectance,
        result.enhanced_histogram,
    ):
        assert histogram.mass == pytest.approx(total, rel=1e-6)


def test_output_shape_and_determinism(noisy_image: RgbImage) -> None:
    first = enhance(noisy_image)
    second = enhance(noisy_image)

    assert first.pixels.shape == noisy_image.pixels.shape
    assert first.pixels.tobytes() == second.pixels.tobytes()


def test_stage_timings_follow_the_clock(ramp_image: RgbImage) -> None:
    ticks = itertools.count()
    engine = EnhancementEngine(clock=lambda: float(next(ticks)))

    timings = engine.run(ramp_image).timings

    assert timings.histogramming_ms == 1000.0
    assert timings.decompose_ms == 1000.0
    assert timings.reprocess_ms == 1000.0
    assert timings.matching_ms == 1000.0
    assert timings.total_ms == 4000.0


def test_sobel_and_direct_prior_variants_run(noisy_image: RgbImage) -> None:
    engine = EnhancementEngine(gradient_operator="sobel", prior_orientation="direct")

    result = engine.run(noisy_image, params=OptParams(max_iter=3))

    assert result.image.pixels.shape == noisy_image.pixels.shape
    assert result.decomposition.iterations <= 3


def test_library_errors_propagate_unchanged(
    monkeypatch: pytest.MonkeyPatch, ramp_image: RgbImage
) -> None:
    def fail(*_: object) -> None:
        raise OptimizationError("degenerate histogram")

    monkeypatch.setattr("histlight.imaging.pipeline.decompose", fail)

    with pytest.raises(OptimizationError, match="degenerate histogram"):
        EnhancementEngine().run(ramp_image)


def test_unexpected_errors_are_wrapped(
    monkeypatch: pytest.MonkeyPatch, ramp_image: RgbImage
) -> None:
    def fail(*_: object) -> None:
        raise RuntimeError("boom")

    monkeypatch.setattr("histlight.imaging.pipeline.decompose", fail)

    with pytest.raises(EnhancementError, match="EnhancementEngine.run failed") as info:
        EnhancementEngine().run(ramp_image)
    assert isinstance(info.value.cause, RuntimeError)


def test_equalize_image_applies_he_to_value(noisy_image: RgbImage) -> None:
    output = equalize_image(noisy_image)

    expected = histogram_equalize(quantize_value_channel(rgb_to_hsv(noisy_image), 256))
    actual = quantize_value_channel(rgb_to_hsv(output), 256)
    assert int(np.max(np.abs(actual.levels - expected.levels))) <= 1
