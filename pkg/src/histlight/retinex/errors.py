from __future__ import annotations

from histlight.errors import HistLightError


class OptimizationError(HistLightError):
    """Raised when the histogram-domain decomposition receives invalid inputs."""


class DegenerateHistogramError(OptimizationError):
    """Raised when a histogram has no mass left to renormalize."""


__all__ = ["DegenerateHistogramError", "OptimizationError"]
