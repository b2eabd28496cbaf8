from __future__ import annotations

from histlight.errors import HistLightError


class ReprocessError(HistLightError):
    """Raised when illumination reprocessing receives invalid parameters."""


__all__ = ["ReprocessError"]
