from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Literal

from pydantic import ValidationError

from histlight.errors import HistLightError
from histlight.histogram import CountHistogram
from histlight.imaging.channels import (
    GradientOperator,
    PriorOrientation,
    channel_histogram,
    dequantize_value_channel,
    quantize_value_channel,
    reflectance_prior_histogram,
)
from histlight.imaging.color import hsv_to_rgb, rgb_to_hsv
from histlight.imaging.errors import EnhancementError
from histlight.imaging.matching import histogram_equalize, histogram_match
from histlight.imaging.types import RgbImage, ValueChannel
from histlight.logging import get_logger
from histlight.reprocess import GammaParam, anchored_histogram, reprocess_histogram
from histlight.retinex import DecompositionResult, OptParams, decompose

MatchingTarget = Literal["anchored", "composed"]


@dataclass(frozen=True)
class StageTimings:
    """Wall time per pipeline stage in milliseconds."""

    histogramming_ms: float
    decompose_ms: float
    reprocess_ms: float
    matching_ms: float
    total_ms: float


@dataclass(frozen=True, eq=False)
class EnhancementResult:
    image: RgbImage
    value_channel: ValueChannel
    enhanced_channel: ValueChannel
    observed: CountHistogram
    prior: CountHistogram
    decomposition: DecompositionResult
    enhanced_histogram: CountHistogram
    matching_target: CountHistogram
    timings: StageTimings


class EnhancementEngine:
    """Runs the HistRetinex pipeline end to end and times each stage.

    RGB -> HSV, quantized V, histograms of V and of the reflectance prior,
    decomposition, gamma reprocessing, histogram matching of V, HSV -> RGB.

    With ``matching_target="anchored"`` V is matched to the observed histogram
    carried along the gamma lift, so gamma 1 leaves V unchanged. ``"composed"``
    matches to the recomposed enhanced histogram directly.
    """

    def __init__(
        self,
        *,
        gradient_operator: GradientOperator = "forward",
        prior_orientation: PriorOrientation = "inverted",
        matching_target: MatchingTarget = "anchored",
        clock: Callable[[], float] = time.perf_counter,
    ) -> None:
        self._gradient_operator = gradient_operator
        self._prior_orientation = prior_orientation
        self._matching_target = matching_target
        self._clock = clock

    def run(
        self,
        image: RgbImage,
        *,
        params: OptParams | None = None,
        gamma: GammaParam | None = None,
    ) -> EnhancementResult:
        if not isinstance(image, RgbImage):
            raise TypeError("image must be an RgbImage")
        params = params or OptParams()
        gamma = gamma or GammaParam()
        logger = get_logger(__name__)

        try:
            start = self._clock()
            hsv = rgb_to_hsv(image)
            channel = quantize_value_channel(hsv, params.levels)
            observed = channel_histogram(channel)
            prior = reflectance_prior_histogram(
                channel,
                operator=self._gradient_operator,
                orientation=self._prior_orientation,
            )
            histogrammed = self._clock()

            decomposition = decompose(observed, prior, params)
            decomposed = self._clock()

            enhanced = reprocess_histogram(
                decomposition.reflectance, decomposition.illumination, gamma
            )
            target = enhanced
            if self._matching_target == "anchored":
                target = anchored_histogram(
                    observed, decomposition.reflectance, decomposition.illumination, gamma
                )
            reprocessed = self._clock()

            enhanced_channel = histogram_match(channel, target)
            output = hsv_to_rgb(hsv.with_value(dequantize_value_channel(enhanced_channel)))
            finished = self._clock()
        except HistLightError:
            raise
        except ValidationError as exc:
            raise EnhancementError(
                "pipeline parameters failed validation",
                context={"errors": exc.errors()},
                cause=exc,
            ) from exc
        except Exception as exc:
            raise EnhancementError(
                "EnhancementEngine.run failed",
                context={"component": "enhancement_engine"},
                cause=exc,
            ) from exc

        timings = StageTimings(
            histogramming_ms=_ms(start, histogrammed),
            decompose_ms=_ms(histogrammed, decomposed),
            reprocess_ms=_ms(decomposed, reprocessed),
            matching_ms=_ms(reprocessed, finished),
            total_ms=_ms(start, finished),
        )
        logger.info(
            "pipeline.stage_timed",
            extra={
                "width": image.width,
                "height": image.height,
                "gamma": gamma.gamma,
                "iterations": decomposition.iterations,
                "decompose_ms": timings.decompose_ms,
                "total_ms": timings.total_ms,
            },
        )
        return EnhancementResult(
            image=output,
            value_channel=channel,
            enhanced_channel=enhanced_channel,
            observed=observed,
            prior=prior,
            decomposition=decomposition,
            enhanced_histogram=enhanced,
            matching_target=target,
            timings=timings,
        )


def enhance(
    image: RgbImage,
    params: OptParams | None = None,
    gamma: GammaParam | None = None,
) -> RgbImage:
    return EnhancementEngine().run(image, params=params, gamma=gamma).image


def equalize_image(image: RgbImage, levels: int = 256) -> RgbImage:
    """Plain histogram equalization of V, the baseline the histogram model refines."""
    hsv = rgb_to_hsv(image)
    channel = histogram_equalize(quantize_value_channel(hsv, levels))
    return hsv_to_rgb(hsv.with_value(dequantize_value_channel(channel)))


def _ms(start: float, end: float) -> float:
    return max(end - start, 0.0) * 1000.0


__all__ = [
    "EnhancementEngine",
    "EnhancementResult",
    "MatchingTarget",
    "StageTimings",
    "enhance",
    "equalize_image",
]
