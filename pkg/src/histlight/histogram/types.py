from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from histlight.histogram.errors import HistogramError

DEFAULT_LEVELS = 256
MASS_TOLERANCE = 1e-6
WEIGHT_TOLERANCE = 1e-12


class PairKind(str, Enum):
    COUNT = "count"
    LOCATION = "location"


def _frozen(array: NDArray[Any]) -> NDArray[Any]:
    array.setflags(write=False)
    return array


def _as_vector(values: ArrayLike, *, label: str) -> NDArray[np.float64]:
    try:
        vector = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise HistogramError(
            f"{label} must be numeric", context={"label": label}, cause=exc
        ) from exc
    if vector.ndim != 1 or vector.size == 0:
        raise HistogramError(
            f"{label} must be a non-empty vector", context={"shape": vector.shape}
        )
    if not np.all(np.isfinite(vector)):
        raise HistogramError(f"{label} must be finite", context={"label": label})
    return vector


def _as_square(values: ArrayLike, *, label: str, dtype: Any = np.float64) -> NDArray[Any]:
    matrix = np.array(values, dtype=dtype)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise HistogramError(
            f"{label} must be a non-empty square matrix", context={"shape": matrix.shape}
        )
    return matrix


@dataclass(frozen=True, eq=False)
class CountHistogram:
    """Per-level pixel masses with the declared pixel count N."""

    bins: NDArray[np.float64]
    total: float

    def __post_init__(self) -> None:
        bins = _as_vector(self.bins, label="bins")
        if np.any(bins < 0.0):
            raise HistogramError(
                "histogram bins must be non-negative",
                context={"min_bin": float(bins.min())},
            )
        total = float(self.total)
        if not np.isfinite(total) or total <= 0.0:
            raise HistogramError("histogram total must be positive", context={"total": total})
        object.__setattr__(self, "bins", _frozen(bins))
        object.__setattr__(self, "total", total)

    @property
    def levels(self) -> int:
        return int(self.bins.size)

    @property
    def mass(self) -> float:
        return float(self.bins.sum())

    def is_normalized(self, *, rel_tol: float = MASS_TOLERANCE) -> bool:
        return abs(self.mass - self.total) <= rel_tol * self.total

    def with_bins(self, bins: ArrayLike) -> CountHistogram:
        return CountHistogram(bins=np.asarray(bins, dtype=np.float64), total=self.total)


@dataclass(frozen=True, eq=False)
class LocationVector:
    """Strictly increasing bin centers on [0, 1]."""

    locs: NDArray[np.float64]

    def __post_init__(self) -> None:
        locs = _as_vector(self.locs, label="locs")
        if locs[0] < 0.0 or locs[-1] > 1.0:
            raise HistogramError(
                "locations must lie in [0, 1]",
                context={"first": float(locs[0]), "last": float(locs[-1])},
            )
        if locs.size > 1 and not np.all(np.diff(locs) > 0.0):
            raise HistogramError("locations must be strictly increasing")
        object.__setattr__(self, "locs", _frozen(locs))

    @property
    def levels(self) -> int:
        return int(self.locs.size)


@dataclass(frozen=True, eq=False)
class PairMatrix:
    """Reflectance-by-illumination matrix; rows index reflectance, columns illumination.

    Count matrices carry the pixel total N of the histograms they were built from.
    """

    cells: NDArray[np.float64]
    kind: PairKind
    total: float | None = None

    def __post_init__(self) -> None:
        cells = _as_square(self.cells, label="cells")
        if not np.all(np.isfinite(cells)):
            raise HistogramError("pair matrix cells must be finite")
        kind = PairKind(self.kind)
        if kind is PairKind.COUNT:
            if np.any(cells < 0.0):
                raise HistogramError("count matrix cells must be non-negative")
            if self.total is None or float(self.total) <= 0.0:
                raise HistogramError(
                    "count matrix requires a positive total", context={"total": self.total}
                )
            object.__setattr__(self, "total", float(self.total))
        elif np.any(cells < 0.0) or np.any(cells > 1.0):
            raise HistogramError(
                "location matrix cells must lie in [0, 1]",
                context={"min": float(cells.min()), "max": float(cells.max())},
            )
        object.__setattr__(self, "cells", _frozen(cells))
        object.__setattr__(self, "kind", kind)

    @property
    def levels(self) -> int:
        return int(self.cells.shape[0])


@dataclass(frozen=True, eq=False)
class IndexMap:
    """Target bin of every (reflectance, illumination) cell."""

    idx: NDArray[np.int64]

    def __post_init__(self) -> None:
        idx = _as_square(self.idx, label="idx", dtype=np.int64)
        levels = idx.shape[0]
        if np.any(idx < 0) or np.any(idx >= levels):
            raise HistogramError(
                "index map entries must be valid bin indices",
                context={"levels": levels, "min": int(idx.min()), "max": int(idx.max())},
            )
        object.__setattr__(self, "idx", _frozen(idx))

    @property
    def levels(self) -> int:
        return int(self.idx.shape[0])

    def members(self, k: int) -> NDArray[np.int64]:
        """Cells (row, column) assigned to bin ``k``."""
        return np.argwhere(self.idx == k)


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Fractional share K of each cell in its target bin's composed mass."""

    w: NDArray[np.float64]

    def __post_init__(self) -> None:
        w = _as_square(self.w, label="w")
        if np.any(w < 0.0) or np.any(w > 1.0 + WEIGHT_TOLERANCE):
            raise HistogramError("weights must lie in [0, 1]")
        object.__setattr__(self, "w", _frozen(w))

    @property
    def levels(self) -> int:
        return int(self.w.shape[0])


__all__ = [
    "DEFAULT_LEVELS",
    "MASS_TOLERANCE",
    "CountHistogram",
    "IndexMap",
    "LocationVector",
    "PairKind",
    "PairMatrix",
    "WeightMatrix",
]
