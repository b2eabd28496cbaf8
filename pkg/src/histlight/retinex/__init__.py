"""Histogram-domain Retinex decomposition (objective, closed-form updates, iteration loop)."""

from histlight.retinex.errors import DegenerateHistogramError, OptimizationError
from histlight.retinex.objective import objective, objective_gradient
from histlight.retinex.schemas import DecompositionResult, OptParams, TraceEntry, UpdateForm
from histlight.retinex.solver import composition_index, decompose, refine_fixed_point
from histlight.retinex.updates import renormalize, update_illumination, update_reflectance

__all__ = [
    "DecompositionResult",
    "DegenerateHistogramError",
    "OptParams",
    "OptimizationError",
    "TraceEntry",
    "UpdateForm",
    "composition_index",
    "decompose",
    "objective",
    "objective_gradient",
    "refine_fixed_point",
    "renormalize",
    "update_illumination",
    "update_reflectance",
]
