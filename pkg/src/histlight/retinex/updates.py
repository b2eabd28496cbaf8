from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from histlight.histogram import CountHistogram, IndexMap, WeightMatrix
from histlight.retinex.errors import DegenerateHistogramError
from histlight.retinex.objective import fidelity_target, require_consistent
from histlight.retinex.schemas import OptParams


def update_illumination(
    reflectance: CountHistogram,
    observed: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    params: OptParams,
) -> CountHistogram:
    """Closed-form illumination update with reflectance and weights held fixed."""
    total = require_consistent(reflectance, observed, weights=weights, index=index)
    coupling = _coupling(reflectance.bins, observed, weights, index, total, params, axis=0)
    numerator = coupling + params.alpha * observed.bins
    denominator = float(np.sum(reflectance.bins**2)) / (total * total) + params.alpha
    return observed.with_bins(np.maximum(numerator / denominator, 0.0))


def update_reflectance(
    illumination: CountHistogram,
    gradient: CountHistogram,
    observed: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    params: OptParams,
) -> CountHistogram:
    """Closed-form reflectance update with illumination and weights held fixed."""
    total = require_consistent(illumination, gradient, observed, weights=weights, index=index)
    coupling = _coupling(illumination.bins, observed, weights, index, total, params, axis=1)
    numerator = coupling + params.beta * gradient.bins
    denominator = float(np.sum(illumination.bins**2)) / (total * total) + params.beta
    return gradient.with_bins(np.maximum(numerator / denominator, 0.0))


def renormalize(histogram: CountHistogram) -> CountHistogram:
    """Rescale the bins so they sum to the declared pixel total."""
    mass = histogram.mass
    if not mass > 0.0:
        raise DegenerateHistogramError(
            "degenerate histogram", context={"levels": histogram.levels}
        )
    return histogram.with_bins(histogram.total * histogram.bins / mass)


def _coupling(
    fixed: NDArray[np.float64],
    observed: CountHistogram,
    weights: WeightMatrix,
    index: IndexMap,
    total: float,
    params: OptParams,
    *,
    axis: int,
) -> NDArray[np.float64]:
    # axis 0 sums over reflectance rows (illumination update), axis 1 over columns.
    if params.update_form == "gradient":
        target = fidelity_target(observed, weights, index)
    else:
        safe = np.where(weights.w > 0.0, weights.w, 1.0)
        target = np.where(weights.w > 0.0, observed.bins[index.idx] / safe, 0.0)
    if axis == 0:
        return (fixed @ target) / total
    return (target @ fixed) / total


__all__ = ["renormalize", "update_illumination", "update_reflectance"]
