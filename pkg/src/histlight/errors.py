"""Exception root for histlight; every package error derives from ``HistLightError``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

PACKAGE = "histlight"


@dataclass
class HistLightError(Exception):
    """Failure inside a histlight stage, with context for the structured log.

    ``component`` names the subpackage that raised (``histogram``, ``retinex``,
    ``reprocess``, ``imaging``, ``metrics`` or ``cli``) and is derived from the
    module that defines the error class.
    """

    message: str
    context: Mapping[str, Any] = field(default_factory=dict)
    cause: Exception | None = None

    @property
    def component(self) -> str:
        parts = type(self).__module__.split(".")
        if len(parts) > 2 and parts[0] == PACKAGE:
            return parts[1]
        return "core"

    def __str__(self) -> str:
        segments: list[str] = [f"[{self.component}] {self.message}"]
        if self.context:
            segments.append(f"context={dict(self.context)}")
        if self.cause:
            segments.append(f"cause={self.cause!r}")
        return " | ".join(segments)

    def to_payload(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "error_type": type(self).__name__,
            "component": self.component,
            "message": self.message,
        }
        if self.context:
            payload["context"] = dict(self.context)
        if self.cause:
            payload["cause"] = repr(self.cause)
        return payload


class ConfigError(HistLightError):
    """Run configuration, flag or config-file value that fails validation."""

    @property
    def component(self) -> str:
        return "config"


__all__ = ["ConfigError", "HistLightError"]
