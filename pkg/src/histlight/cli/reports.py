from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Any, Mapping, Sequence

import pandas as pd
from pydantic import field_validator

from histlight.errors import HistLightError
from histlight.imaging import StageTimings
from histlight.metrics import MetricReport
from histlight.schemas import HistLightBaseModel, versioned_payload

CSV_FLOAT_FORMAT = "%.12g"

BENCH_COLUMNS = (
    "width",
    "height",
    "histogramming_ms",
    "decompose_ms",
    "reprocess_ms",
    "matching_ms",
    "total_ms",
    "iterations",
    "psnr",
    "ssim",
    "loe",
)
METRIC_COLUMNS = ("name", "psnr", "ssim", "loe")
AVERAGE_ROW = "average"


class ReportError(HistLightError):
    """Raised when a report cannot be written."""


class BenchRecord(HistLightBaseModel):
    """One resolution of the benchmark sweep; metrics are set when a reference was given."""

    width: int
    height: int
    histogramming_ms: float
    decompose_ms: float
    reprocess_ms: float
    matching_ms: float
    total_ms: float
    iterations: int
    psnr: float | None = None
    ssim: float | None = None
    loe: float | None = None

    @field_validator(
        "histogramming_ms", "decompose_ms", "reprocess_ms", "matching_ms", "total_ms"
    )
    @classmethod
    def _require_non_negative_timing(cls, value: float) -> float:
        if value < 0.0:
            raise ValueError("timings must be non-negative")
        return value

    @classmethod
    def from_run(
        cls,
        *,
        width: int,
        height: int,
        timings: StageTimings,
        iterations: int,
        metrics: MetricReport | None = None,
    ) -> BenchRecord:
        return cls(
            width=width,
            height=height,
            histogramming_ms=timings.histogramming_ms,
            decompose_ms=timings.decompose_ms,
            reprocess_ms=timings.reprocess_ms,
            matching_ms=timings.matching_ms,
            total_ms=timings.total_ms,
            iterations=iterations,
            psnr=None if metrics is None else metrics.psnr_display,
            ssim=None if metrics is None else metrics.ssim,
            loe=None if metrics is None else metrics.loe,
        )

    @property
    def resolution(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def histogram_stage_ms(self) -> float:
        """Decompose plus reprocess, the part that should not scale with pixel count."""
        return self.decompose_ms + self.reprocess_ms


def metric_row(name: str, report: MetricReport) -> dict[str, Any]:
    return {"name": name, "psnr": report.psnr_display, "ssim": report.ssim, "loe": report.loe}


def with_average_row(rows: Sequence[Mapping[str, Any]]) -> list[dict[str, Any]]:
    """Append the arithmetic mean of every metric column as a final ``average`` row."""
    frame = pd.DataFrame(list(rows), columns=list(METRIC_COLUMNS))
    means = frame[["psnr", "ssim", "loe"]].mean()
    average = {"name": AVERAGE_ROW, **{key: float(means[key]) for key in means.index}}
    return [dict(row) for row in rows] + [average]


def render_csv(rows: Sequence[Mapping[str, Any]], columns: Sequence[str]) -> str:
    frame = pd.DataFrame(list(rows), columns=list(columns))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n", float_format=CSV_FLOAT_FORMAT)
    return buffer.getvalue()


def render_json(kind: str, body: Mapping[str, Any]) -> str:
    payload = versioned_payload(kind, body)
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def write_csv(
    rows: Sequence[Mapping[str, Any]], columns: Sequence[str], path: Path | str
) -> Path:
    return write_text(render_csv(rows, columns), Path(path))


def write_json(kind: str, body: Mapping[str, Any], path: Path | str) -> Path:
    return write_text(render_json(kind, body), Path(path))


def write_text(text: str, path: Path | str) -> Path:
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise ReportError(
            "report is not writable", context={"path": str(path)}, cause=exc
        ) from exc
    return path


def _json_default(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


__all__ = [
    "AVERAGE_ROW",
    "BENCH_COLUMNS",
    "CSV_FLOAT_FORMAT",
    "METRIC_COLUMNS",
    "BenchRecord",
    "ReportError",
    "metric_row",
    "render_csv",
    "render_json",
    "with_average_row",
    "write_csv",
    "write_json",
    "write_text",
]
