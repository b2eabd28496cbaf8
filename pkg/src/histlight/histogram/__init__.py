"""Histogram-domain primitives of the histogram-based Retinex model."""

from histlight.histogram.counts import (
    chi_square_distance,
    compute_count_histogram,
    normalize_to_probability,
    uniform_locations,
)
from histlight.histogram.errors import HistogramError, HistogramShapeError
from histlight.histogram.matrices import (
    HistogramModel,
    bin_mass,
    build_index_map,
    compute_weights,
    estimate_histogram,
    nearest_bins,
    pair_count_matrix,
    pair_location_matrix,
)
from histlight.histogram.types import (
    DEFAULT_LEVELS,
    CountHistogram,
    IndexMap,
    LocationVector,
    PairKind,
    PairMatrix,
    WeightMatrix,
)

__all__ = [
    "DEFAULT_LEVELS",
    "CountHistogram",
    "HistogramError",
    "HistogramModel",
    "HistogramShapeError",
    "IndexMap",
    "LocationVector",
    "PairKind",
    "PairMatrix",
    "WeightMatrix",
    "bin_mass",
    "build_index_map",
    "chi_square_distance",
    "compute_count_histogram",
    "compute_weights",
    "estimate_histogram",
    "nearest_bins",
    "normalize_to_probability",
    "pair_count_matrix",
    "pair_location_matrix",
    "uniform_locations",
]
