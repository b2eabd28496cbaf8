from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from histlight.histogram import DEFAULT_LEVELS
from histlight.imaging.errors import ImageError


def _frozen(array: NDArray[Any]) -> NDArray[Any]:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RgbImage:
    """H x W x 3 array of 8-bit channel values."""

    pixels: NDArray[np.uint8]

    def __post_init__(self) -> None:
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ImageError(
                "RGB pixels must have shape (H, W, 3)", context={"shape": pixels.shape}
            )
        if pixels.shape[0] == 0 or pixels.shape[1] == 0:
            raise ImageError(
                "image must hold at least one pixel", context={"shape": pixels.shape}
            )
        if pixels.dtype != np.uint8:
            if np.any(pixels < 0) or np.any(pixels > 255):
                raise ImageError("RGB channel values must lie in [0, 255]")
            pixels = pixels.astype(np.uint8)
        object.__setattr__(self, "pixels", _frozen(np.array(pixels, dtype=np.uint8)))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height


@dataclass(frozen=True, eq=False)
class HsvImage:
    """Hue in degrees [0, 360), saturation and value in [0, 1]."""

    h: NDArray[np.float64]
    s: NDArray[np.float64]
    v: NDArray[np.float64]

    def __post_init__(self) -> None:
        h = np.array(self.h, dtype=np.float64)
        s = np.array(self.s, dtype=np.float64)
        v = np.array(self.v, dtype=np.float64)
        if h.ndim != 2 or h.shape != s.shape or h.shape != v.shape:
            raise ImageError(
                "HSV planes must be 2-D with equal shapes",
                context={"h": h.shape, "s": s.shape, "v": v.shape},
            )
        if np.any(h < 0.0) or np.any(h >= 360.0):
            raise ImageError("hue must lie in [0, 360)")
        for label, plane in (("saturation", s), ("value", v)):
            if np.any(plane < 0.0) or np.any(plane > 1.0):
                raise ImageError(f"{label} must lie in [0, 1]")
        object.__setattr__(self, "h", _frozen(h))
        object.__setattr__(self, "s", _frozen(s))
        object.__setattr__(self, "v", _frozen(v))

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.v.shape[0]), int(self.v.shape[1])

    def with_value(self, v: NDArray[np.float64]) -> HsvImage:
        return HsvImage(h=self.h, s=self.s, v=v)


@dataclass(frozen=True, eq=False)
class ValueChannel:
    """Quantized value channel: H x W integer levels in [0, num_levels - 1]."""

    levels: NDArray[np.int64]
    num_levels: int = DEFAULT_LEVELS

    def __post_init__(self) -> None:
        levels = np.asarray(self.levels)
        if levels.ndim != 2 or levels.size == 0:
            raise ImageError(
                "value channel must be a non-empty 2-D array", context={"shape": levels.shape}
            )
        if self.num_levels < 2:
            raise ImageError(
                "value channel needs at least two levels", context={"levels": self.num_levels}
            )
        if not np.issubdtype(levels.dtype, np.integer):
            raise ImageError(
                "value channel levels must be integers", context={"dtype": str(levels.dtype)}
            )
        if int(levels.min()) < 0 or int(levels.max()) > self.num_levels - 1:
            raise ImageError(
                "value channel levels out of range",
                context={
                    "num_levels": self.num_levels,
                    "min": int(levels.min()),
                    "max": int(levels.max()),
                },
            )
        object.__setattr__(self, "levels", _frozen(np.array(levels, dtype=np.int64)))

    @property
    def height(self) -> int:
        return int(self.levels.shape[0])

    @property
    def width(self) -> int:
        return int(self.levels.shape[1])

    @property
    def pixel_count(self) -> int:
        return int(self.levels.size)

    def with_levels(self, levels: NDArray[np.int64]) -> ValueChannel:
        return ValueChannel(levels=levels, num_levels=self.num_levels)


__all__ = ["HsvImage", "RgbImage", "ValueChannel"]
