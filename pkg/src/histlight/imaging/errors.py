from __future__ import annotations

from histlight.errors import HistLightError


class ImageError(HistLightError):
    """Raised when image arrays or channels violate their invariants."""


class ImageIOError(ImageError):
    """Raised when image files cannot be read or written."""


class EnhancementError(ImageError):
    """Raised when the enhancement pipeline fails unexpectedly."""


__all__ = ["EnhancementError", "ImageError", "ImageIOError"]
