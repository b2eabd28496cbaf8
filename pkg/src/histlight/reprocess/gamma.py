from __future__ import annotations

import numpy as np
from pydantic import field_validator

from histlight.histogram import (
    CountHistogram,
    IndexMap,
    LocationVector,
    PairMatrix,
    bin_mass,
    build_index_map,
    compute_weights,
    estimate_histogram,
    nearest_bins,
    pair_count_matrix,
    pair_location_matrix,
    uniform_locations,
)
from histlight.reprocess.errors import ReprocessError
from histlight.schemas import HistLightBaseModel

DEFAULT_GAMMA = 2.2


class GammaParam(HistLightBaseModel):
    """Brightening exponent applied to the illumination locations as ``b ** (1 / gamma)``."""

    gamma: float = DEFAULT_GAMMA

    @field_validator("gamma")
    @classmethod
    def _require_brightening(cls, value: float) -> float:
        if not np.isfinite(value) or value < 1.0:
            raise ValueError("gamma must be ≥ 1")
        return value


def gamma_locations(locations: LocationVector, gamma: GammaParam | float) -> LocationVector:
    """Lift illumination bin locations by the power 1/gamma."""
    exponent = 1.0 / _resolve_gamma(gamma)
    return LocationVector(locs=np.power(locations.locs, exponent))


def adjusted_pair_location_matrix(
    adjusted_illumination: LocationVector, reflectance: LocationVector
) -> PairMatrix:
    """Location matrix of the lifted illumination; rows still index reflectance."""
    return pair_location_matrix(reflectance, adjusted_illumination)


def build_enhanced_index_map(adjusted: PairMatrix, target: LocationVector) -> IndexMap:
    return build_index_map(adjusted, target)


def enhanced_histogram(count_matrix: PairMatrix, enhanced_index: IndexMap) -> CountHistogram:
    """Histogram of the enhanced value channel."""
    return estimate_histogram(count_matrix, enhanced_index)


def reprocess_histogram(
    reflectance: CountHistogram,
    illumination: CountHistogram,
    gamma: GammaParam | float,
) -> CountHistogram:
    """Brighten a converged decomposition and recompose its histogram."""
    _require_matching_levels(reflectance, illumination)
    locs = uniform_locations(reflectance.levels)
    adjusted = adjusted_pair_location_matrix(gamma_locations(locs, gamma), locs)
    index = build_enhanced_index_map(adjusted, locs)
    return enhanced_histogram(pair_count_matrix(reflectance, illumination), index)


def anchored_histogram(
    observed: CountHistogram,
    reflectance: CountHistogram,
    illumination: CountHistogram,
    gamma: GammaParam | float,
) -> CountHistogram:
    """Observed histogram carried along the gamma lift of a decomposition.

    Each observed bin is split over the level pairs that compose it, in
    proportion to their pair counts, and every share moves to the bin its
    lifted pair lands in. Observed bins the decomposition leaves empty are
    lifted as if their reflectance were one. At gamma 1 the result is the
    observed histogram itself.
    """
    _require_matching_levels(reflectance, illumination)
    if observed.levels != reflectance.levels:
        raise ReprocessError(
            "observed histogram must share the decomposition level count",
            context={"observed": observed.levels, "decomposition": reflectance.levels},
        )
    locs = uniform_locations(reflectance.levels)
    lifted_locs = gamma_locations(locs, gamma)
    count = pair_count_matrix(reflectance, illumination)
    index = build_index_map(pair_location_matrix(locs, locs), locs)
    lifted = build_enhanced_index_map(adjusted_pair_location_matrix(lifted_locs, locs), locs)

    shares = compute_weights(count, index).w * observed.bins[index.idx]
    bins = np.bincount(lifted.idx.ravel(), weights=shares.ravel(), minlength=locs.levels)
    orphaned = np.where(bin_mass(count, index) > 0.0, 0.0, observed.bins)
    bins += np.bincount(
        nearest_bins(lifted_locs.locs, locs.locs), weights=orphaned, minlength=locs.levels
    )
    return observed.with_bins(bins)


def _require_matching_levels(reflectance: CountHistogram, illumination: CountHistogram) -> None:
    if reflectance.levels != illumination.levels:
        raise ReprocessError(
            "reflectance and illumination must share the level count",
            context={"reflectance": reflectance.levels, "illumination": illumination.levels},
        )


def _resolve_gamma(gamma: GammaParam | float) -> float:
    if isinstance(gamma, GammaParam):
        return gamma.gamma
    value = float(gamma)
    if not np.isfinite(value) or value < 1.0:
        raise ReprocessError("gamma must be ≥ 1", context={"gamma": value})
    return value


__all__ = [
    "DEFAULT_GAMMA",
    "GammaParam",
    "adjusted_pair_location_matrix",
    "anchored_histogram",
    "build_enhanced_index_map",
    "enhanced_histogram",
    "gamma_locations",
    "reprocess_histogram",
]
