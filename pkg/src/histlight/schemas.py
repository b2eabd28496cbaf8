"""Pydantic base shared by histlight parameters, run configuration and report rows."""

from __future__ import annotations

from typing import Any, Mapping

from pydantic import BaseModel, ConfigDict

SCHEMA_VERSION = "1.0"


class HistLightBaseModel(BaseModel):
    """Frozen model behind ``OptParams``, ``GammaParam``, ``RunConfig`` and ``BenchRecord``.

    Unknown keys are rejected and string fields are stripped before validation.
    """

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        str_strip_whitespace=True,
    )

    def to_canonical_dict(self) -> dict[str, Any]:
        """JSON-ready fields; unset optionals such as ``epsilon=None`` are dropped."""
        return self.model_dump(mode="json", exclude_none=True)


def versioned_payload(kind: str, body: Mapping[str, Any]) -> dict[str, Any]:
    """JSON report envelope: ``schema_version`` and ``kind`` next to the body fields."""
    reserved = {"schema_version", "kind"} & set(body)
    if reserved:
        raise ValueError(f"report body may not set {sorted(reserved)}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **body}


__all__ = ["HistLightBaseModel", "SCHEMA_VERSION", "versioned_payload"]
