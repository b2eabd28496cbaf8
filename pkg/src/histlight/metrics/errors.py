from __future__ import annotations

from histlight.errors import HistLightError


class MetricError(HistLightError):
    """Raised when a quality metric cannot be evaluated for an image pair."""


__all__ = ["MetricError"]
