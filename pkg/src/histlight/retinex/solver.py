from __future__ import annotations

import numpy as np

from histlight.histogram import (
    CountHistogram,
    IndexMap,
    WeightMatrix,
    build_index_map,
    chi_square_distance,
    compute_weights,
    estimate_histogram,
    pair_count_matrix,
    pair_location_matrix,
    uniform_locations,
)
from histlight.logging import get_logger
from histlight.retinex.errors import OptimizationError
from histlight.retinex.objective import objective, require_consistent
from histlight.retinex.schemas import DecompositionResult, OptParams, TraceEntry
from histlight.retinex.updates import renormalize, update_illumination, update_reflectance

DEFAULT_FIXED_POINT_SWEEPS = 10_000
DEFAULT_FIXED_POINT_TOLERANCE = 1e-10


def composition_index(levels: int) -> IndexMap:
    """Index map of the uniform-location composition; it does not change across iterations."""
    locs = uniform_locations(levels)
    return build_index_map(pair_location_matrix(locs, locs), locs)


def decompose(
    observed: CountHistogram,
    gradient: CountHistogram,
    params: OptParams | None = None,
) -> DecompositionResult:
    """Alternate reflectance and illumination updates until both settle or T is reached.

    Starts from the renormalized gradient histogram for reflectance and the observed
    histogram for illumination; weights are refreshed after every renormalization.
    """
    params = params or OptParams()
    _require_decomposable(observed, gradient, params)
    logger = get_logger(__name__)

    total = observed.total
    index = composition_index(params.levels)
    threshold = params.stop_threshold(total)

    reflectance = renormalize(gradient)
    illumination = observed
    weights = compute_weights(pair_count_matrix(reflectance, illumination), index)

    steps: list[TraceEntry] = []
    converged = False
    iteration = 0
    while iteration < params.max_iter:
        iteration += 1
        before = objective(
            reflectance, illumination, observed, gradient, weights, index, params
        )
        next_reflectance = update_reflectance(
            illumination, gradient, observed, weights, index, params
        )
        after_reflectance = objective(
            next_reflectance, illumination, observed, gradient, weights, index, params
        )
        next_illumination = update_illumination(
            next_reflectance, observed, weights, index, params
        )
        after_illumination = objective(
            next_reflectance, next_illumination, observed, gradient, weights, index, params
        )
        steps.append(TraceEntry(iteration, "reflectance", before, after_reflectance))
        steps.append(
            TraceEntry(iteration, "illumination", after_reflectance, after_illumination)
        )

        next_reflectance = renormalize(next_reflectance)
        next_illumination = renormalize(next_illumination)
        delta_r = float(np.sum((next_reflectance.bins - reflectance.bins) ** 2))
        delta_l = float(np.sum((next_illumination.bins - illumination.bins) ** 2))
        reflectance, illumination = next_reflectance, next_illumination
        weights = compute_weights(pair_count_matrix(reflectance, illumination), index)

        logger.debug(
            "retinex.decompose.iteration",
            extra={
                "iteration": iteration,
                "objective": after_illumination,
                "delta_reflectance": delta_r,
                "delta_illumination": delta_l,
            },
        )
        if delta_r <= threshold and delta_l <= threshold:
            converged = True
            break

    fit_distance = chi_square_distance(
        estimate_histogram(pair_count_matrix(reflectance, illumination), index), observed
    )
    logger.info(
        "retinex.decompose.finished",
        extra={
            "iterations": iteration,
            "converged": converged,
            "fit_distance": fit_distance,
            "levels": params.levels,
            "update_form": params.update_form,
        },
    )
    return DecompositionResult(
        illumination=illumination,
        reflectance=reflectance,
        steps=tuple(steps),
        iterations=iteration,
        converged=converged,
        fit_distance=fit_distance,
    )


def refine_fixed_point(
    reflectance: CountHistogram,
    illumination: CountHistogram,
    observed: CountHistogram,
    gradient: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    params: OptParams,
    *,
    max_sweeps: int = DEFAULT_FIXED_POINT_SWEEPS,
    tolerance: float = DEFAULT_FIXED_POINT_TOLERANCE,
) -> tuple[CountHistogram, CountHistogram]:
    """Alternate both updates with weights frozen and no renormalization.

    Stops once no bin moves by more than ``tolerance * N``; raises if that never happens.
    """
    total = require_consistent(
        reflectance, illumination, observed, gradient, weights=weights, index=index
    )
    for _ in range(max_sweeps):
        next_reflectance = update_reflectance(
            illumination, gradient, observed, weights, index, params
        )
        next_illumination = update_illumination(
            next_reflectance, observed, weights, index, params
        )
        shift = max(
            float(np.max(np.abs(next_reflectance.bins - reflectance.bins))),
            float(np.max(np.abs(next_illumination.bins - illumination.bins))),
        )
        reflectance, illumination = next_reflectance, next_illumination
        if shift <= tolerance * total:
            return reflectance, illumination
    raise OptimizationError(
        "fixed-point refinement did not settle",
        context={"max_sweeps": max_sweeps, "tolerance": tolerance},
    )


def _require_decomposable(
    observed: CountHistogram, gradient: CountHistogram, params: OptParams
) -> None:
    if observed.levels != params.levels or gradient.levels != params.levels:
        raise OptimizationError(
            "histograms must have params.levels bins",
            context={
                "levels": params.levels,
                "observed": observed.levels,
                "gradient": gradient.levels,
            },
        )
    if abs(observed.total - gradient.total) > 1e-9 * observed.total:
        raise OptimizationError(
            "observed and gradient histograms must declare the same pixel total",
            context={"observed": observed.total, "gradient": gradient.total},
        )
    for name, histogram in (("observed", observed), ("gradient", gradient)):
        if not histogram.is_normalized():
            raise OptimizationError(
                f"{name} histogram must sum to its pixel total",
                context={"mass": histogram.mass, "total": histogram.total},
            )


__all__ = ["composition_index", "decompose", "refine_fixed_point"]
