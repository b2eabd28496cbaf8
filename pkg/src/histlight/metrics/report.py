from __future__ import annotations

import math

from pydantic import field_validator

from histlight.imaging import RgbImage
from histlight.metrics.quality import loe, psnr, ssim
from histlight.schemas import HistLightBaseModel

PSNR_CAP_DB = 99.0
_SSIM_TOLERANCE = 1e-12


class MetricReport(HistLightBaseModel):
    """PSNR, SSIM and LOE of a candidate against its reference.

    ``psnr`` is ``None`` when the images are identical.
    """

    psnr: float | None
    ssim: float
    loe: float

    @field_validator("psnr")
    @classmethod
    def _require_finite_psnr(cls, value: float | None) -> float | None:
        if value is not None and not math.isfinite(value):
            raise ValueError("psnr must be finite; use None for identical images")
        return value

    @field_validator("ssim")
    @classmethod
    def _require_ssim_range(cls, value: float) -> float:
        if not -1.0 - _SSIM_TOLERANCE <= value <= 1.0 + _SSIM_TOLERANCE:
            raise ValueError("ssim must lie in [-1, 1]")
        return value

    @field_validator("loe")
    @classmethod
    def _require_non_negative_loe(cls, value: float) -> float:
        if value < 0.0:
            raise ValueError("loe must be non-negative")
        return value

    @property
    def is_identical(self) -> bool:
        return self.psnr is None

    @property
    def psnr_display(self) -> float:
        if self.psnr is None:
            return PSNR_CAP_DB
        return min(self.psnr, PSNR_CAP_DB)


def evaluate(reference: RgbImage, candidate: RgbImage) -> MetricReport:
    peak = psnr(reference, candidate)
    return MetricReport(
        psnr=None if math.isinf(peak) else peak,
        ssim=ssim(reference, candidate),
        loe=loe(reference, candidate),
    )


__all__ = ["PSNR_CAP_DB", "MetricReport", "evaluate"]
