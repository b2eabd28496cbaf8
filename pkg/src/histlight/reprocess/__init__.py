"""Illumination brightening in the histogram domain."""

from histlight.reprocess.errors import ReprocessError
from histlight.reprocess.gamma import (
    DEFAULT_GAMMA,
    GammaParam,
    adjusted_pair_location_matrix,
    anchored_histogram,
    build_enhanced_index_map,
    enhanced_histogram,
    gamma_locations,
    reprocess_histogram,
)

__all__ = [
    "DEFAULT_GAMMA",
    "GammaParam",
    "ReprocessError",
    "adjusted_pair_location_matrix",
    "anchored_histogram",
    "build_enhanced_index_map",
    "enhanced_histogram",
    "gamma_locations",
    "reprocess_histogram",
]
