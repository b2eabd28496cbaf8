from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from pydantic import field_validator

from histlight.histogram import DEFAULT_LEVELS, CountHistogram
from histlight.schemas import HistLightBaseModel

UpdateForm = Literal["gradient", "ratio"]
StepName = Literal["reflectance", "illumination"]

DEFAULT_ALPHA = 0.1
DEFAULT_BETA = 0.1
DEFAULT_MAX_ITER = 10
EPSILON_SCALE = 1e-3

_UPDATE_FORM_ALIASES = {
    "gradient": "gradient",
    "gradientconsistent": "gradient",
    "gradient_consistent": "gradient",
    "ratio": "ratio",
    "paper": "ratio",
    "paperliteral": "ratio",
    "paper_literal": "ratio",
}


class OptParams(HistLightBaseModel):
    """Weights, stopping rule and update variant of the decomposition.

    ``epsilon`` bounds the squared change of each renormalized histogram between
    iterations; when omitted it scales with the pixel count as ``1e-3 * N**2``.
    """

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    epsilon: float | None = None
    max_iter: int = DEFAULT_MAX_ITER
    levels: int = DEFAULT_LEVELS
    update_form: UpdateForm = "gradient"

    @field_validator("alpha", "beta")
    @classmethod
    def _require_positive_weight(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("alpha and beta must be positive")
        return value

    @field_validator("epsilon")
    @classmethod
    def _require_positive_epsilon(cls, value: float | None) -> float | None:
        if value is not None and not value > 0.0:
            raise ValueError("epsilon must be positive")
        return value

    @field_validator("max_iter")
    @classmethod
    def _require_iterations(cls, value: int) -> int:
        if value < 1:
            raise ValueError("max_iter must be at least 1")
        return value

    @field_validator("levels")
    @classmethod
    def _require_levels(cls, value: int) -> int:
        if value < 2:
            raise ValueError("levels must be at least 2")
        return value

    @field_validator("update_form", mode="before")
    @classmethod
    def _normalize_update_form(cls, value: str) -> str:
        key = str(value).strip().lower()
        return _UPDATE_FORM_ALIASES.get(key, key)

    def stop_threshold(self, total: float) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return EPSILON_SCALE * total * total


@dataclass(frozen=True)
class TraceEntry:
    """Objective value around one coordinate update (weights and the other histogram fixed)."""

    iteration: int
    step: StepName
    objective_before: float
    objective_after: float


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """Final histograms plus the step trace; ``fit_distance`` is the chi-square gap between
    the composed estimate and the observed histogram."""

    illumination: CountHistogram
    reflectance: CountHistogram
    steps: tuple[TraceEntry, ...]
    iterations: int
    converged: bool
    fit_distance: float = 0.0

    @property
    def objective_trace(self) -> tuple[float, ...]:
        return tuple(entry.objective_after for entry in self.steps)


__all__ = [
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "DEFAULT_MAX_ITER",
    "DecompositionResult",
    "OptParams",
    "StepName",
    "TraceEntry",
    "UpdateForm",
]
