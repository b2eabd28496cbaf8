from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from histlight.imaging.types import HsvImage, RgbImage


def rgb_to_hsv(image: RgbImage) -> HsvImage:
    """Hexcone RGB to HSV; value is max(r, g, b) / 255."""
    rgb = image.pixels.astype(np.float64) / 255.0
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    high = np.max(rgb, axis=2)
    low = np.min(rgb, axis=2)
    chroma = high - low

    safe_chroma = np.where(chroma > 0.0, chroma, 1.0)
    hue_r = np.mod((g - b) / safe_chroma, 6.0)
    hue_g = (b - r) / safe_chroma + 2.0
    hue_b = (r - g) / safe_chroma + 4.0
    sector = np.where(high == r, hue_r, np.where(high == g, hue_g, hue_b))
    hue = np.where(chroma > 0.0, 60.0 * sector, 0.0)
    hue = np.where(hue >= 360.0, hue - 360.0, hue)

    saturation = np.divide(chroma, high, out=np.zeros_like(high), where=high > 0.0)
    return HsvImage(h=hue, s=saturation, v=high)


def hsv_to_rgb(image: HsvImage) -> RgbImage:
    """Inverse hexcone conversion rounded half away from zero to 8 bits."""
    chroma = image.v * image.s
    sector = image.h / 60.0
    x = chroma * (1.0 - np.abs(np.mod(sector, 2.0) - 1.0))
    offset = image.v - chroma
    index = np.floor(sector).astype(np.int64) % 6

    zeros = np.zeros_like(chroma)
    r = np.choose(index, [chroma, x, zeros, zeros, x, chroma])
    g = np.choose(index, [x, chroma, chroma, x, zeros, zeros])
    b = np.choose(index, [zeros, zeros, x, chroma, chroma, x])
    rgb = np.stack([r + offset, g + offset, b + offset], axis=2)
    return RgbImage(pixels=to_uint8(rgb))


def to_uint8(unit: NDArray[np.float64]) -> NDArray[np.uint8]:
    scaled = np.floor(np.clip(unit, 0.0, 1.0) * 255.0 + 0.5)
    return scaled.astype(np.uint8)


def lightness(image: RgbImage) -> NDArray[np.float64]:
    """Per-pixel max over RGB."""
    return np.max(image.pixels, axis=2).astype(np.float64)


__all__ = ["hsv_to_rgb", "lightness", "rgb_to_hsv", "to_uint8"]
