"""histlight: histogram-domain Retinex enhancement of low-light images."""

from histlight.errors import ConfigError, HistLightError

__version__ = "0.1.0"

__all__ = ["ConfigError", "HistLightError", "__version__"]
