import math

import numpy as np
import pytest

from noonflow.analytics.entanglement import EntanglementAnalytics
from noonflow.analytics.metrology import PhaseMetrology
from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import (
    IDENTITY_PARAMS, ChannelParams, ConcurrenceSeries, Dephasing, Depolarization,
    FlowMethod, FlowSample, GeneralizedAmplitudeDamping, SpontaneousEmission,
)
from noonflow.simulation.noon_state import NoonStateBuilder
from noonflow.utils.errors import DomainError

evolve = NoonStateBuilder.evolve
concurrence = EntanglementAnalytics.concurrence

BELL = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


# ============================================================================
# Wootters concurrence
# ============================================================================

def test_bell_state_is_maximally_entangled():
    assert concurrence(np.outer(BELL, BELL.conj())) == pytest.approx(1.0, abs=1e-12)


def test_product_state_is_separable():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    assert concurrence(rho) == pytest.approx(0.0, abs=1e-12)


def test_werner_threshold():
    bell = np.outer(BELL, BELL.conj())
    assert abs(concurrence(bell / 3 + (2 / 3) * np.eye(4) / 4)) <= 1e-10
    # above threshold: C = (3p - 1)/2
    assert concurrence(0.6 * bell + 0.4 * np.eye(4) / 4) == pytest.approx(0.4, abs=1e-12)


def test_concurrence_rejects_wrong_dimension():
    with pytest.raises(DomainError):
        concurrence(np.eye(8) / 8)


# ============================================================================
# closed form for the two-photon state
# ============================================================================

def test_noon_concurrence_values():
    assert EntanglementAnalytics.concurrence_noon(evolve(2, 0.0, IDENTITY_PARAMS)) == pytest.approx(1.0)
    assert EntanglementAnalytics.concurrence_noon(evolve(2, 0.0, ChannelParams(0.0, 1.0, 0.5))) \
        == pytest.approx(0.25)
    assert EntanglementAnalytics.concurrence_noon(evolve(2, 0.0, ChannelParams(0.3, 0.4, 0.0))) == 0.0


def test_noon_concurrence_needs_two_photons():
    with pytest.raises(DomainError):
        EntanglementAnalytics.concurrence_noon(evolve(3, 0.0, IDENTITY_PARAMS))


def test_noon_concurrence_matches_wootters(all_models, rng):
    for _ in range(50):
        model = all_models[int(rng.integers(len(all_models)))]
        state = PhaseMetrology.state_at(model, 2, rng.uniform(0, 2 * np.pi), rng.uniform(0.0, 20.0))
        general = concurrence(NoonStateBuilder.dense_density(state))
        closed = EntanglementAnalytics.concurrence_noon(state)
        assert abs(general - closed) <= 1e-12
        assert -1e-12 <= closed <= 1.0 + 1e-12


def test_lorentzian_concurrence_is_h_squared(weak, strong):
    for model in (weak, strong):
        for t in np.linspace(0.0, 30.0, 61):
            params = ChannelEvaluator.eval_params(model, t)
            value = EntanglementAnalytics.concurrence_noon(evolve(2, 0.0, params))
            assert value == pytest.approx(params.h ** 2, abs=1e-14)


def test_gad_concurrence_closed_form():
    model = GeneralizedAmplitudeDamping(1.0, 10.0)
    for t in np.linspace(0.0, 3.0, 31):
        params = ChannelEvaluator.eval_params(model, t)
        expected = max(0.0, params.h ** 2 - (1 - math.cos(10 * t) ** 2) * (1 - params.h) ** 2 / 2)
        value = EntanglementAnalytics.concurrence_noon(evolve(2, 0.0, params))
        assert value == pytest.approx(expected, abs=1e-12)


# ============================================================================
# monotonicity and revivals
# ============================================================================

def test_markovian_concurrence_never_increases(weak):
    grid = np.linspace(0.0, 10.0, 2001)
    for model in (Dephasing(1.0), Depolarization(1.0, 1.0), SpontaneousEmission(1.0, 1.0), weak):
        values = EntanglementAnalytics.concurrence_series(model, grid).values
        assert values[0] == pytest.approx(1.0)
        assert np.all(np.diff(values) <= 1e-9)


def test_strong_coupling_concurrence_revives(strong):
    grid = np.linspace(0.0, 50.0, 5001)
    values = EntanglementAnalytics.concurrence_series(strong, grid).values
    first_zero = int(np.argmax(values < 1e-8))
    assert first_zero > 0
    assert values[first_zero:].max() > values[first_zero] + 1e-6


# ============================================================================
# I^(E)
# ============================================================================

def test_nm_measure_monotone_series_is_zero():
    measure = EntanglementAnalytics.nm_entanglement_measure(
        ConcurrenceSeries([0, 1, 2, 3], [1.0, 0.7, 0.7, 0.1]))
    assert measure.value == pytest.approx(0.0, abs=1e-15)
    assert measure.is_markovian


def test_nm_measure_hand_example():
    measure = EntanglementAnalytics.nm_entanglement_measure(
        ConcurrenceSeries([0, 1, 2, 3], [1.0, 0.0, 0.3, 0.0]))
    assert measure.delta_E == pytest.approx(-1.0)
    assert measure.total_variation == pytest.approx(1.6)
    assert measure.value == pytest.approx(0.6)
    assert measure.value <= 2 * measure.total_variation


def test_nm_measure_rejects_unsorted_grid():
    with pytest.raises(DomainError):
        EntanglementAnalytics.nm_entanglement_measure(ConcurrenceSeries([0, 2, 1], [1, 1, 1]))


def test_cumulative_matches_total():
    series = ConcurrenceSeries([0, 1, 2, 3, 4], [1.0, 0.2, 0.5, 0.1, 0.4])
    running = EntanglementAnalytics.cumulative_nm(series)
    assert running[0] == 0.0
    assert running[-1] == pytest.approx(EntanglementAnalytics.nm_entanglement_measure(series).value)
    assert np.all(np.diff(running) >= 0)


def test_nm_measure_regimes(weak, strong):
    grid = np.linspace(0.0, 50.0, 5001)
    weak_value = EntanglementAnalytics.nm_entanglement_measure(
        EntanglementAnalytics.concurrence_series(weak, grid)).value
    strong_value = EntanglementAnalytics.nm_entanglement_measure(
        EntanglementAnalytics.concurrence_series(strong, grid)).value
    assert weak_value <= 1e-6
    assert strong_value > 0.01


def test_nm_measure_grows_with_bath_oscillation():
    grid = np.linspace(0.0, 20.0, 20001)
    slow, fast = (
        EntanglementAnalytics.nm_entanglement_measure(
            EntanglementAnalytics.concurrence_series(GeneralizedAmplitudeDamping(1.0, omega), grid)).value
        for omega in (0.1, 10.0)
    )
    assert fast > slow


# ============================================================================
# QFI backflow witness
# ============================================================================

def _flows(model, n, grid):
    return [PhaseMetrology.qfi_flow_fd(model, n, 0.0, t) for t in grid]


def test_witness_empty_for_markovian(weak):
    grid = np.linspace(0.0, 10.0, 1001)
    assert EntanglementAnalytics.nm_qfi_witness(_flows(Dephasing(1.0), 8, grid)) == []
    assert EntanglementAnalytics.nm_qfi_witness(_flows(weak, 8, grid)) == []


def test_witness_finds_backflow_for_strong_coupling(strong):
    intervals = EntanglementAnalytics.nm_qfi_witness(_flows(strong, 8, np.linspace(0.0, 50.0, 1001)))
    assert len(intervals) >= 1
    t_star = ChannelEvaluator.first_coherence_zero(strong)
    assert intervals[0][0] >= t_star - 0.1


def test_witness_groups_contiguous_points():
    samples = [FlowSample(t, value, FlowMethod.FINITE_DIFFERENCE)
               for t, value in zip(range(6), [-1, 2, 3, -1, 4, -2])]
    assert EntanglementAnalytics.nm_qfi_witness(samples) == [(1.0, 2.0), (4.0, 4.0)]


# ============================================================================
# I^(E) grid
# ============================================================================

def test_nm_series_is_uniform_without_zeros(weak):
    series = EntanglementAnalytics.nm_series(weak, 1.0)
    assert len(series.times) == 1001
    np.testing.assert_allclose(np.diff(series.times), 1e-3, atol=1e-12)


def test_nm_series_refines_zero_crossings():
    model = GeneralizedAmplitudeDamping(1.0, 10.0)
    include = [0.25, 1.3333]
    series = EntanglementAnalytics.nm_series(model, 3.0, include=include)
    assert len(series.times) > 3001 + len(include)
    assert np.all(np.diff(series.times) > 0)
    assert np.diff(series.times).min() < 2e-4
    for t in include:
        k = int(np.searchsorted(series.times, t))
        assert series.times[k] == t
        expected = EntanglementAnalytics.concurrence_noon(PhaseMetrology.state_at(model, 2, 0.0, t))
        assert series.values[k] == pytest.approx(expected, abs=1e-15)


def test_nm_series_rejects_empty_window(weak):
    with pytest.raises(DomainError):
        EntanglementAnalytics.nm_series(weak, 0.0)
