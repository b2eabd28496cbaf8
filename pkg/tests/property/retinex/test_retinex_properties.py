from __future__ import annotations

from typing import Any

import numpy as np
from hypothesis import assume, given, seed, settings
from hypothesis import strategies as st

from histlight.histogram import CountHistogram
from histlight.retinex import OptParams, decompose

LEVELS = 32


@st.composite
def _observed_and_gradient(draw: Any) -> tuple[CountHistogram, CountHistogram]:
    counts = st.lists(
        st.integers(min_value=0, max_value=40), min_size=LEVELS, max_size=LEVELS
    )
    observed = np.array(draw(counts), dtype=float)
    gradient = np.array(draw(counts), dtype=float)
    assume(observed.sum() > 0 and gradient.sum() > 0)
    total = float(observed.sum())
    return (
        CountHistogram(bins=observed, total=total),
        CountHistogram(bins=gradient * total / gradient.sum(), total=total),
    )


@seed(20261011)
@given(
    histograms=_observed_and_gradient(),
    update_form=st.sampled_from(["gradient", "ratio"]),
)
@settings(max_examples=50, deadline=None)
def test_decomposition_output_is_a_pair_of_valid_histograms(
    histograms: tuple[CountHistogram, CountHistogram], update_form: str
) -> None:
    observed, gradient = histograms
    params = OptParams(levels=LEVELS, max_iter=5, update_form=update_form)

    result = decompose(observed, gradient, params)

    assert 1 <= result.iterations <= params.max_iter
    assert len(result.steps) == 2 * result.iterations
    for histogram in (result.reflectance, result.illumination):
        assert np.all(histogram.bins >= 0.0)
        assert histogram.is_normalized()
    assert result.fit_distance >= 0.0


@seed(20261012)
@given(histograms=_observed_and_gradient())
@settings(max_examples=50, deadline=None)
def test_every_coordinate_step_descends(
    histograms: tuple[CountHistogram, CountHistogram],
) -> None:
    observed, gradient = histograms
    params = OptParams(levels=LEVELS, max_iter=5)

    result = decompose(observed, gradient, params)

    for entry in result.steps:
        slack = 1e-9 * max(1.0, entry.objective_before)
        assert entry.objective_after <= entry.objective_before + slack
