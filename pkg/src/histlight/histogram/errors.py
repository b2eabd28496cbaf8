from __future__ import annotations

from histlight.errors import HistLightError


class HistogramError(HistLightError):
    """Raised when histogram-domain inputs violate their invariants."""


class HistogramShapeError(HistogramError):
    """Raised when histograms or pair matrices disagree on level count or pixel total."""


__all__ = ["HistogramError", "HistogramShapeError"]
