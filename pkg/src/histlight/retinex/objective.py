from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from histlight.histogram import CountHistogram, IndexMap, WeightMatrix
from histlight.retinex.errors import OptimizationError
from histlight.retinex.schemas import OptParams

TOTAL_TOLERANCE = 1e-9


def require_consistent(
    *histograms: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
) -> float:
    """Check shared level count and pixel total; return the total N."""
    levels = {h.levels for h in histograms} | {weights.levels, index.levels}
    if len(levels) != 1:
        raise OptimizationError(
            "histograms, weights and index map must share the level count",
            context={"levels": sorted(levels)},
        )
    total = histograms[0].total
    for histogram in histograms[1:]:
        if abs(histogram.total - total) > TOTAL_TOLERANCE * total:
            raise OptimizationError(
                "histograms must declare the same pixel total",
                context={"expected": total, "found": histogram.total},
            )
    return total


def fidelity_target(
    observed: CountHistogram, weights: WeightMatrix, index: IndexMap
) -> NDArray[np.float64]:
    """K_ij * H_C(S)[index(i, j)]: the observed mass each cell is asked to carry."""
    return weights.w * observed.bins[index.idx]


def objective(
    reflectance: CountHistogram,
    illumination: CountHistogram,
    observed: CountHistogram,
    gradient: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    params: OptParams,
) -> float:
    """Cell-wise fidelity plus the illumination and reflectance prior terms."""
    total = require_consistent(
        reflectance, illumination, observed, gradient, weights=weights, index=index
    )
    residual = _residual(reflectance, illumination, observed, weights, index, total)
    fidelity = float(np.sum(residual * residual))
    illumination_prior = float(np.sum((illumination.bins - observed.bins) ** 2))
    reflectance_prior = float(np.sum((reflectance.bins - gradient.bins) ** 2))
    return fidelity + params.alpha * illumination_prior + params.beta * reflectance_prior


def objective_gradient(
    reflectance: CountHistogram,
    illumination: CountHistogram,
    observed: CountHistogram,
    gradient: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    params: OptParams,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Partial derivatives of the objective w.r.t. every reflectance and illumination bin."""
    total = require_consistent(
        reflectance, illumination, observed, gradient, weights=weights, index=index
    )
    residual = _residual(reflectance, illumination, observed, weights, index, total)
    grad_r = 2.0 * (residual @ illumination.bins) / total + 2.0 * params.beta * (
        reflectance.bins - gradient.bins
    )
    grad_l = 2.0 * (reflectance.bins @ residual) / total + 2.0 * params.alpha * (
        illumination.bins - observed.bins
    )
    return grad_r, grad_l


def _residual(
    reflectance: CountHistogram,
    illumination: CountHistogram,
    observed: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    total: float,
) -> NDArray[np.float64]:
    composed = np.outer(reflectance.bins, illumination.bins) / total
    return composed - fidelity_target(observed, weights, index)


__all__ = ["fidelity_target", "objective", "objective_gradient", "require_consistent"]
