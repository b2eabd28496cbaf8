from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from histlight.imaging import RgbImage

GrayFactory = Callable[[np.ndarray], RgbImage]


def gray(levels: np.ndarray) -> RgbImage:
    plane = np.asarray(levels, dtype=np.uint8)
    return RgbImage(pixels=np.repeat(plane[:, :, None], 3, axis=2))


@pytest.fixture
def gray_image() -> GrayFactory:
    return gray


@pytest.fixture
def ramp_image() -> RgbImage:
    """64x64 horizontal ramp over V levels 10..73 (unit forward gradient)."""
    row = np.arange(10, 74, dtype=np.uint8)
    return gray(np.tile(row, (64, 1)))


@pytest.fixture
def dark_ramp_image() -> RgbImage:
    """Dimmer, colored ramp: 48x40 with V levels 5..44 and fixed hue."""
    values = np.tile(np.arange(5, 45, dtype=np.float64), (48, 1))
    pixels = np.stack([values, values * 0.6, values * 0.3], axis=2)
    return RgbImage(pixels=np.floor(pixels + 0.5).astype(np.uint8))


@pytest.fixture
def constant_image() -> RgbImage:
    return gray(np.full((16, 16), 73))


@pytest.fixture
def noisy_image() -> RgbImage:
    rng = np.random.default_rng(20240501)
    base = np.tile(np.linspace(8.0, 70.0, 48), (40, 1))
    noise = rng.integers(-4, 5, size=(40, 48, 3))
    pixels = np.clip(base[:, :, None] + noise, 0, 255)
    return RgbImage(pixels=pixels.astype(np.uint8))


@pytest.fixture
def textured_image() -> RgbImage:
    """96x96 dim sin^2 texture with seeded noise and one lit patch."""
    rng = np.random.default_rng(7)
    rows, cols = np.mgrid[0:96, 0:96]
    texture = 18.0 + 40.0 * np.sin(rows / 3.0) ** 2 * np.sin(cols / 5.0) ** 2
    texture[60:84, 12:36] += 90.0
    values = np.clip(texture + rng.normal(0.0, 6.0, size=texture.shape), 0, 255)
    return gray(np.floor(values + 0.5))
