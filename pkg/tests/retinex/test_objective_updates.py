from __future__ import annotations

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from histlight.histogram import (
    CountHistogram,
    IndexMap,
    WeightMatrix,
    compute_weights,
    pair_count_matrix,
)
from histlight.retinex import (
    DegenerateHistogramError,
    OptimizationError,
    OptParams,
    composition_index,
    objective,
    renormalize,
    update_illumination,
    update_reflectance,
)

LEVELS = 4


def _hist(values: list[float] | np.ndarray, total: float | None = None) -> CountHistogram:
    bins = np.asarray(values, dtype=np.float64)
    return CountHistogram(bins=bins, total=float(bins.sum()) if total is None else total)


def _random_state(seed: int, levels: int = LEVELS) -> dict[str, CountHistogram]:
    rng = np.random.default_rng(seed)
    total = 40.0

    def draw() -> CountHistogram:
        raw = rng.uniform(0.5, 3.0, size=levels)
        return _hist(raw * total / raw.sum(), total)

    return {"reflectance": draw(), "illumination": draw(), "observed": draw(), "gradient": draw()}


def _weights(
    reflectance: CountHistogram, illumination: CountHistogram
) -> tuple[WeightMatrix, IndexMap]:
    index = composition_index(reflectance.levels)
    return compute_weights(pair_count_matrix(reflectance, illumination), index), index


def test_objective_vanishes_on_an_exact_composition() -> None:
    total = 16.0
    observed = _hist([0.0, 6.0, 10.0, 0.0])
    reflectance = _hist([0.0, 0.0, 0.0, total])
    weights, index = _weights(reflectance, observed)

    value = objective(reflectance, observed, observed, reflectance, weights, index, OptParams())

    assert value == 0.0


def test_objective_matches_triple_loop_oracle() -> None:
    state = _random_state(3)
    params = OptParams(alpha=0.3, beta=0.7, levels=LEVELS)
    r, l_, s, g = (state[key] for key in ("reflectance", "illumination", "observed", "gradient"))
    weights, index = _weights(r, l_)

    value = objective(r, l_, s, g, weights, index, params)

    total = r.total
    oracle = 0.0
    for i in range(LEVELS):
        for j in range(LEVELS):
            composed = r.bins[i] * l_.bins[j] / total
            target = weights.w[i, j] * s.bins[index.idx[i, j]]
            oracle += (composed - target) ** 2
    for j in range(LEVELS):
        oracle += params.alpha * (l_.bins[j] - s.bins[j]) ** 2
    for i in range(LEVELS):
        oracle += params.beta * (r.bins[i] - g.bins[i]) ** 2
    assert value == pytest.approx(oracle, rel=1e-9)
    assert value >= 0.0


def test_objective_rejects_mismatched_levels() -> None:
    state = _random_state(5)
    weights, index = _weights(state["reflectance"], state["illumination"])
    short = _hist([20.0, 20.0], 40.0)
    with pytest.raises(OptimizationError, match="level count"):
        objective(
            state["reflectance"], short, state["observed"], state["gradient"],
            weights, index, OptParams(levels=LEVELS),
        )


def test_large_alpha_pins_illumination_to_observed() -> None:
    state = _random_state(9)
    weights, index = _weights(state["reflectance"], state["illumination"])

    updated = update_illumination(
        state["reflectance"], state["observed"], weights, index, OptParams(alpha=1e12)
    )

    assert updated.bins == pytest.approx(state["observed"].bins, rel=1e-3)


def test_unit_reflectance_reproduces_observed_illumination() -> None:
    total = 32.0
    observed = _hist([4.0, 12.0, 10.0, 6.0])
    reflectance = _hist([0.0, 0.0, 0.0, total])
    start = _hist([8.0, 8.0, 8.0, 8.0])
    weights, index = _weights(reflectance, start)

    for alpha in (0.01, 0.1, 5.0):
        updated = update_illumination(reflectance, observed, weights, index, OptParams(alpha=alpha))
        assert updated.bins == pytest.approx(observed.bins, rel=1e-12)


def test_large_beta_pins_reflectance_to_prior() -> None:
    state = _random_state(13)
    weights, index = _weights(state["reflectance"], state["illumination"])

    updated = update_reflectance(
        state["illumination"], state["gradient"], state["observed"], weights, index,
        OptParams(beta=1e12),
    )

    assert updated.bins == pytest.approx(state["gradient"].bins, rel=1e-3)


@pytest.mark.parametrize("seed", [21, 22, 23])
def test_illumination_update_is_the_coordinate_minimizer(seed: int) -> None:
    state = _random_state(seed)
    params = OptParams(alpha=0.2, beta=0.4, levels=LEVELS)
    r, s, g = state["reflectance"], state["observed"], state["gradient"]
    weights, index = _weights(r, state["illumination"])

    updated = update_illumination(r, s, weights, index, params)

    for j in range(LEVELS):
        def cost(x: float, j: int = j) -> float:
            bins = updated.bins.copy()
            bins[j] = x
            return objective(r, updated.with_bins(bins), s, g, weights, index, params)

        best = minimize_scalar(
            cost, bounds=(0.0, 4.0 * r.total), method="bounded", options={"xatol": 1e-10}
        )
        assert updated.bins[j] == pytest.approx(best.x, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("seed", [31, 32, 33])
def test_reflectance_update_is_the_coordinate_minimizer(seed: int) -> None:
    state = _random_state(seed)
    params = OptParams(alpha=0.2, beta=0.4, levels=LEVELS)
    l_, s, g = state["illumination"], state["observed"], state["gradient"]
    weights, index = _weights(state["reflectance"], l_)

    updated = update_reflectance(l_, g, s, weights, index, params)

    for i in range(LEVELS):
        def cost(x: float, i: int = i) -> float:
            bins = updated.bins.copy()
            bins[i] = x
            return objective(updated.with_bins(bins), l_, s, g, weights, index, params)

        best = minimize_scalar(
            cost, bounds=(0.0, 4.0 * l_.total), method="bounded", options={"xatol": 1e-10}
        )
        assert updated.bins[i] == pytest.approx(best.x, rel=1e-6, abs=1e-6)


def test_ratio_form_agrees_with_gradient_form_for_binary_weights() -> None:
    total = 32.0
    observed = _hist([4.0, 12.0, 10.0, 6.0])
    reflectance = _hist([0.0, 0.0, 0.0, total])
    gradient = _hist([2.0, 2.0, 8.0, 20.0])
    weights, index = _weights(reflectance, observed)
    assert set(np.unique(weights.w).tolist()) <= {0.0, 1.0}

    forms = [OptParams(update_form="gradient"), OptParams(update_form="ratio")]

    illumination = [
        update_illumination(reflectance, observed, weights, index, params).bins
        for params in forms
    ]
    reflect = [
        update_reflectance(observed, gradient, observed, weights, index, params).bins
        for params in forms
    ]

    assert illumination[1] == pytest.approx(illumination[0])
    assert reflect[1] == pytest.approx(reflect[0])


def test_updates_never_go_negative() -> None:
    state = _random_state(41)
    weights, index = _weights(state["reflectance"], state["illumination"])
    params = OptParams(update_form="ratio")

    illumination = update_illumination(
        state["reflectance"], state["observed"], weights, index, params
    )
    reflectance = update_reflectance(
        state["illumination"], state["gradient"], state["observed"], weights, index, params
    )

    assert np.all(illumination.bins >= 0.0)
    assert np.all(reflectance.bins >= 0.0)


def test_renormalize_examples() -> None:
    assert renormalize(_hist([1.0, 1.0, 1.0, 1.0], 8.0)).bins.tolist() == [2.0, 2.0, 2.0, 2.0]
    assert renormalize(_hist([3.0, 1.0], 100.0)).bins.tolist() == [75.0, 25.0]
    normalized = _hist([1.5, 2.5, 4.0])
    assert renormalize(normalized).bins == pytest.approx(normalized.bins, abs=1e-12)


def test_renormalize_rejects_empty_histogram() -> None:
    with pytest.raises(DegenerateHistogramError, match="degenerate histogram"):
        renormalize(_hist([0.0, 0.0], 4.0))
