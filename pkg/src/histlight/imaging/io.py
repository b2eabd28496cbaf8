from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from histlight.imaging.errors import ImageError, ImageIOError
from histlight.imaging.types import RgbImage

WRITE_FORMATS = {".png": "PNG", ".jpg": "JPEG", ".jpeg": "JPEG"}


def read_image(path: Path | str) -> RgbImage:
    """Load a PNG/JPEG as 8-bit RGB; grayscale is promoted and alpha dropped."""
    source = Path(path)
    try:
        with Image.open(source) as handle:
            rgb = handle.convert("RGB")
            pixels = np.asarray(rgb, dtype=np.uint8)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        raise ImageIOError(
            "input image is not readable", context={"path": str(source)}, cause=exc
        ) from exc
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageIOError(
            "input is not a decodable image", context={"path": str(source)}, cause=exc
        ) from exc
    return RgbImage(pixels=pixels)


def write_image(image: RgbImage, path: Path | str) -> Path:
    target = Path(path)
    image_format = WRITE_FORMATS.get(target.suffix.lower())
    if image_format is None:
        raise ImageIOError(
            "unsupported output format",
            context={"path": str(target), "supported": sorted(WRITE_FORMATS)},
        )
    try:
        Image.fromarray(np.ascontiguousarray(image.pixels)).save(
            target, format=image_format
        )
    except OSError as exc:
        raise ImageIOError(
            "output image is not writable", context={"path": str(target)}, cause=exc
        ) from exc
    return target


def resize_nearest(image: RgbImage, width: int, height: int) -> RgbImage:
    """Nearest-neighbour resampling; introduces no new intensity values."""
    if width < 1 or height < 1:
        raise ImageError("target size must be positive", context={"width": width, "height": height})
    rows = (np.arange(height) * image.height) // height
    cols = (np.arange(width) * image.width) // width
    return RgbImage(pixels=image.pixels[rows[:, None], cols[None, :]])


__all__ = ["read_image", "resize_nearest", "write_image"]
