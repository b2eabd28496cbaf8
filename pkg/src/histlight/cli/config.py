from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Literal, Mapping

from pydantic import ValidationError, field_validator, model_validator

from histlight.errors import ConfigError
from histlight.histogram import DEFAULT_LEVELS
from histlight.imaging import GradientOperator, MatchingTarget, PriorOrientation
from histlight.reprocess import DEFAULT_GAMMA, GammaParam
from histlight.retinex import OptParams
from histlight.retinex.schemas import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_MAX_ITER
from histlight.schemas import HistLightBaseModel

Method = Literal["histretinex", "he"]
ReportFormat = Literal["csv", "json"]

THREADS_ENV = "HISTLIGHT_THREADS"
DEFAULT_BUDGET_MS = 5000.0
BENCH_EPSILON = 1e-12
DEFAULT_GAMMAS: tuple[float, ...] = (1.0, 1.5, 2.2, 5.0, 10.0)
DEFAULT_RESOLUTIONS: tuple[tuple[int, int], ...] = tuple(
    (side, side) for side in range(100, 1001, 100)
)


def parse_resolutions(raw: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"WxH,WxH,..."`` into (width, height) pairs."""
    pairs: list[tuple[int, int]] = []
    for token in raw.split(","):
        token = token.strip().lower()
        if not token:
            continue
        width, sep, height = token.partition("x")
        if not sep or not width.isdigit() or not height.isdigit():
            raise ValueError(f"resolution must look like WxH, got {token!r}")
        pairs.append((int(width), int(height)))
    if not pairs:
        raise ValueError("at least one resolution is required")
    return tuple(pairs)


def parse_gammas(raw: str) -> tuple[float, ...]:
    try:
        values = tuple(float(token) for token in raw.split(",") if token.strip())
    except ValueError as exc:
        raise ValueError(f"gammas must be comma-separated numbers, got {raw!r}") from exc
    if not values:
        raise ValueError("at least one gamma is required")
    return values


class RunConfig(HistLightBaseModel):
    """Resolved parameters of one CLI invocation.

    Optimization and gamma fields are checked against ``OptParams`` and
    ``GammaParam`` so range errors surface before any image is read.
    """

    input: Path | None = None
    reference: Path | None = None
    output: Path | None = None
    sidecar: Path | None = None
    trace_output: Path | None = None
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    epsilon: float | None = None
    max_iter: int = DEFAULT_MAX_ITER
    levels: int = DEFAULT_LEVELS
    update_form: str = "gradient"
    gamma: float = DEFAULT_GAMMA
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    method: Method = "histretinex"
    gradient: GradientOperator = "forward"
    prior: PriorOrientation = "inverted"
    matching_target: MatchingTarget = "anchored"
    report: ReportFormat = "csv"
    resolutions: tuple[tuple[int, int], ...] = DEFAULT_RESOLUTIONS
    budget_ms: float = DEFAULT_BUDGET_MS
    threads: int | None = None

    @field_validator("resolutions", mode="before")
    @classmethod
    def _parse_resolutions(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_resolutions(value)
        return value

    @field_validator("resolutions")
    @classmethod
    def _require_positive_resolutions(
        cls, value: tuple[tuple[int, int], ...]
    ) -> tuple[tuple[int, int], ...]:
        if not value:
            raise ValueError("at least one resolution is required")
        if any(width < 1 or height < 1 for width, height in value):
            raise ValueError("resolutions must be positive")
        return value

    @field_validator("gammas", mode="before")
    @classmethod
    def _parse_gammas(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_gammas(value)
        return value

    @field_validator("method", "report", "gradient", "prior", "matching_target", mode="before")
    @classmethod
    def _normalize_choice(cls, value: Any) -> Any:
        if isinstance(value, str):
            return value.strip().lower()
        return value

    @field_validator("budget_ms")
    @classmethod
    def _require_positive_budget(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("budget_ms must be positive")
        return value

    @field_validator("threads")
    @classmethod
    def _require_positive_threads(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("threads must be at least 1")
        return value

    @model_validator(mode="after")
    def _validate_owned_ranges(self) -> RunConfig:
        for gamma in (self.gamma, *self.gammas):
            _check(GammaParam, {"gamma": gamma})
        _check(OptParams, self._opt_fields())
        return self

    def opt_params(self) -> OptParams:
        return OptParams(**self._opt_fields())

    def bench_params(self) -> OptParams:
        """Timing runs use all T iterations unless an explicit epsilon is given."""
        fields = self._opt_fields()
        if self.epsilon is None:
            fields["epsilon"] = BENCH_EPSILON
        return OptParams(**fields)

    def gamma_param(self, gamma: float | None = None) -> GammaParam:
        return GammaParam(gamma=self.gamma if gamma is None else gamma)

    def _opt_fields(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "epsilon": self.epsilon,
            "max_iter": self.max_iter,
            "levels": self.levels,
            "update_form": self.update_form,
        }


def load_run_config(
    overrides: Mapping[str, Any], config_path: Path | str | None = None
) -> RunConfig:
    """Merge defaults, an optional JSON config file and explicit flags (highest precedence)."""
    merged: dict[str, Any] = {}
    if config_path is not None:
        merged.update(_read_config_file(Path(config_path)))
    merged.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return RunConfig(**merged)
    except ValidationError as exc:
        raise ConfigError(
            f"invalid configuration: {_first_message(exc)}",
            context={"errors": _describe(exc)},
            cause=exc,
        ) from exc


def resolve_threads(
    requested: int | None = None, environ: Mapping[str, str] | None = None
) -> int:
    """Worker count for batch commands, capped by ``HISTLIGHT_THREADS`` when set."""
    env = os.environ if environ is None else environ
    workers = requested or os.cpu_count() or 1
    raw = env.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return workers
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigError(
            f"{THREADS_ENV} must be a positive integer", context={"value": raw}, cause=exc
        ) from exc
    if cap < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer", context={"value": raw})
    return min(workers, cap)


def _read_config_file(path: Path) -> dict[str, Any]:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(
            "failed to read config file", context={"path": str(path)}, cause=exc
        ) from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError("invalid config file", context={"path": str(path)}, cause=exc) from exc
    if not isinstance(payload, Mapping):
        raise ConfigError("config file must hold a JSON object", context={"path": str(path)})
    return dict(payload)


def _check(model: type[HistLightBaseModel], fields: Mapping[str, Any]) -> None:
    try:
        model(**fields)
    except ValidationError as exc:
        raise ValueError(_first_message(exc)) from exc


def _first_message(exc: ValidationError) -> str:
    error = exc.errors()[0]
    ctx = error.get("ctx") or {}
    if "error" in ctx:
        return str(ctx["error"])
    return str(error["msg"])


def _describe(exc: ValidationError) -> list[dict[str, Any]]:
    return [
        {"loc": ".".join(str(part) for part in error["loc"]), "msg": error["msg"]}
        for error in exc.errors()
    ]


__all__ = [
    "DEFAULT_BUDGET_MS",
    "DEFAULT_GAMMAS",
    "DEFAULT_RESOLUTIONS",
    "THREADS_ENV",
    "Method",
    "ReportFormat",
    "RunConfig",
    "load_run_config",
    "parse_gammas",
    "parse_resolutions",
    "resolve_threads",
]
