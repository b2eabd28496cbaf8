"""Full-reference quality metrics for enhanced images."""

from histlight.metrics.errors import MetricError
from histlight.metrics.quality import loe, luma, psnr, ssim
from histlight.metrics.report import PSNR_CAP_DB, MetricReport, evaluate

__all__ = [
    "PSNR_CAP_DB",
    "MetricError",
    "MetricReport",
    "evaluate",
    "loe",
    "luma",
    "psnr",
    "ssim",
]
