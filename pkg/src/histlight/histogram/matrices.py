from __future__ import annotations

from dataclasses import dataclass
from typing import cast

import numpy as np
from numpy.typing import ArrayLike, NDArray

from histlight.histogram.errors import HistogramError, HistogramShapeError
from histlight.histogram.types import (
    CountHistogram,
    IndexMap,
    LocationVector,
    PairKind,
    PairMatrix,
    WeightMatrix,
)

TOTAL_TOLERANCE = 1e-9


def nearest_bins(values: ArrayLike, grid: ArrayLike) -> NDArray[np.int64]:
    """Index of the nearest grid point for every value; ties go to the lower index.

    ``grid`` must be non-decreasing. On plateaus the first index of the plateau wins.
    """
    points = np.asarray(values, dtype=np.float64)
    centers = np.asarray(grid, dtype=np.float64)
    if centers.ndim != 1 or centers.size == 0:
        raise HistogramError("grid must be a non-empty vector", context={"shape": centers.shape})
    if centers.size == 1:
        return np.zeros(points.shape, dtype=np.int64)
    if np.any(np.diff(centers) < 0.0):
        raise HistogramError("grid must be non-decreasing")

    right = np.clip(np.searchsorted(centers, points, side="left"), 1, centers.size - 1)
    left = right - 1
    take_left = (points - centers[left]) <= (centers[right] - points)
    chosen = np.where(take_left, left, right)
    return np.searchsorted(centers, centers[chosen], side="left").astype(np.int64)


def pair_count_matrix(reflectance: CountHistogram, illumination: CountHistogram) -> PairMatrix:
    """Expected pixel mass of every (reflectance, illumination) level pair."""
    _require_same_levels(reflectance.levels, illumination.levels)
    total = reflectance.total
    if abs(total - illumination.total) > TOTAL_TOLERANCE * total:
        raise HistogramShapeError(
            "histograms must declare the same pixel total",
            context={"reflectance": total, "illumination": illumination.total},
        )
    cells = np.outer(reflectance.bins, illumination.bins) / total
    return PairMatrix(cells=cells, kind=PairKind.COUNT, total=total)


def pair_location_matrix(reflectance: LocationVector, illumination: LocationVector) -> PairMatrix:
    """Composed intensity b_R[i] * b_L[j] of every level pair."""
    _require_same_levels(reflectance.levels, illumination.levels)
    cells = np.outer(reflectance.locs, illumination.locs)
    return PairMatrix(cells=cells, kind=PairKind.LOCATION)


def build_index_map(location_matrix: PairMatrix, target: LocationVector) -> IndexMap:
    """Assign each cell to the nearest target bin center."""
    if location_matrix.kind is not PairKind.LOCATION:
        raise HistogramError(
            "index maps are built from location matrices",
            context={"kind": location_matrix.kind.value},
        )
    _require_same_levels(location_matrix.levels, target.levels)
    return IndexMap(idx=nearest_bins(location_matrix.cells, target.locs))


def bin_mass(count_matrix: PairMatrix, index_map: IndexMap) -> NDArray[np.float64]:
    """Total count-matrix mass routed to every bin."""
    _require_count(count_matrix)
    _require_same_levels(count_matrix.levels, index_map.levels)
    return np.bincount(
        index_map.idx.ravel(),
        weights=count_matrix.cells.ravel(),
        minlength=index_map.levels,
    ).astype(np.float64)


def compute_weights(count_matrix: PairMatrix, index_map: IndexMap) -> WeightMatrix:
    """Share of each cell in its target bin; zero where the bin holds no mass."""
    mass = bin_mass(count_matrix, index_map)
    denom = mass[index_map.idx]
    weights = np.divide(
        count_matrix.cells,
        denom,
        out=np.zeros_like(count_matrix.cells),
        where=denom > 0.0,
    )
    return WeightMatrix(w=weights)


def estimate_histogram(count_matrix: PairMatrix, index_map: IndexMap) -> CountHistogram:
    """Composed histogram: count-matrix mass aggregated per target bin."""
    mass = bin_mass(count_matrix, index_map)
    return CountHistogram(bins=mass, total=cast(float, count_matrix.total))


@dataclass(frozen=True, eq=False)
class HistogramModel:
    """Count matrix, location matrix, index map and weights of one (R, L) state."""

    count: PairMatrix
    location: PairMatrix
    index: IndexMap
    weights: WeightMatrix

    @classmethod
    def build(
        cls,
        reflectance: CountHistogram,
        illumination: CountHistogram,
        *,
        reflectance_locs: LocationVector,
        illumination_locs: LocationVector,
        target_locs: LocationVector,
    ) -> HistogramModel:
        count = pair_count_matrix(reflectance, illumination)
        location = pair_location_matrix(reflectance_locs, illumination_locs)
        index = build_index_map(location, target_locs)
        return cls(
            count=count,
            location=location,
            index=index,
            weights=compute_weights(count, index),
        )

    def estimate(self) -> CountHistogram:
        return estimate_histogram(self.count, self.index)


def _require_count(matrix: PairMatrix) -> None:
    if matrix.kind is not PairKind.COUNT:
        raise HistogramError(
            "expected a count matrix", context={"kind": matrix.kind.value}
        )


def _require_same_levels(first: int, second: int) -> None:
    if first != second:
        raise HistogramShapeError(
            "level counts must match", context={"first": first, "second": second}
        )


__all__ = [
    "HistogramModel",
    "bin_mass",
    "build_index_map",
    "compute_weights",
    "estimate_histogram",
    "nearest_bins",
    "pair_count_matrix",
    "pair_location_matrix",
]
