#!/usr/bin/env python3
"""
Tests for iteration, transient times and candidate-set membership
"""
import numpy as np
import pytest

from transientscope.core import (
    DomainEscape, MapSystem, NonFiniteState, Observable, TransientPointClass,
    TransientStatus, candidate_residual, classify_transient_point, delta_v,
    first_triggers, in_candidate_set, iterate, transient_time,
)
from transientscope.zoo import build, resolve_observable


def brute_force_transient_time(h, x, y, s, horizon):
    """Independent scalar loop over example1 with v = x"""
    for t in range(horizon + 1):
        x_next = x * (1.0 - h * y)
        y_next = y + h * (x - 1.0)
        if abs(x_next - x) > s:
            return t
        x, y = x_next, y_next
    return None


def first_crossing(h, x, y, level=1.0):
    t = 0
    while x < level:
        x, y = x * (1.0 - h * y), y + h * (x - 1.0)
        t += 1
    return t, x, y


# === Iteration ===

def test_iterate_records_states_and_deltas(example1):
    system, entry, v = example1
    traj = iterate(system, (1e-3, 0.0), 5, v)

    assert traj.steps == 5
    assert traj.states.shape == (6, 2)
    assert traj.deltas.shape == (5,)
    np.testing.assert_array_equal(traj.observable_values, traj.states[:, 0])
    np.testing.assert_array_equal(traj.deltas, np.diff(traj.states[:, 0]))
    np.testing.assert_array_equal(traj.states[1], [1e-3, -0.1 * (1.0 - 1e-3)])


def test_iterate_rejects_zero_steps(example1):
    system, entry, v = example1
    with pytest.raises(ValueError):
        iterate(system, (0.0, 0.0), 0, v)


def test_iterate_rejects_wrong_dimension(example1):
    system, entry, v = example1
    with pytest.raises(ValueError):
        iterate(system, (0.0, 0.0, 0.0), 3, v)


def test_blow_up_carries_partial_trajectory():
    system, entry = build('cubic1d')
    v = resolve_observable(entry, 'x')
    with pytest.raises(NonFiniteState) as info:
        iterate(system, (10.0,), 50, v)

    error = info.value
    assert error.step >= 1
    assert error.trajectory is not None
    assert error.trajectory.steps == error.step - 1
    assert np.all(np.isfinite(error.trajectory.states))


def test_population_models_stay_in_their_box(predator_prey):
    system, entry = predator_prey
    v = resolve_observable(entry, 'x')
    with pytest.raises(DomainEscape):
        iterate(system, (-0.1, 0.0), 3, v)


def test_delta_v_single_evaluation(example1):
    system, entry, v = example1
    assert delta_v(system, v, (0.5, -1.0)) == pytest.approx(0.5 * 0.1)


# === Transient time ===

def test_example1_transient_time_matches_brute_force(example1):
    system, entry, v = example1
    h = 0.1
    s = 0.5 * h * h

    result = transient_time(system, v, (1e-3, 0.0), s, 1_000_000)

    assert result.status is TransientStatus.Finite
    assert result.time == brute_force_transient_time(h, 1e-3, 0.0, s, 1_000_000)
    assert result.trigger_delta > s


def test_example1_trigger_bound_at_first_crossing(example1):
    system, entry, v = example1
    h = 0.1
    eps = 1e-3
    result = transient_time(system, v, (eps, 0.0), 0.5 * h * h, 1_000_000)
    t_star, x, y = first_crossing(h, eps, 0.0)

    assert result.time <= t_star
    assert abs(delta_v(system, v, (x, y))) >= h * h * (1.0 - eps)


def test_transient_time_exceeds_horizon_on_invariant_line(example1):
    system, entry, v = example1
    result = transient_time(system, v, (0.0, 0.0), 0.005, 200)

    assert result.status is TransientStatus.ExceededHorizon
    assert result.time is None
    assert result.to_dict()['status'] == "ExceededHorizon"


@pytest.mark.parametrize("s, horizon", [(0.0, 10), (-1.0, 10), (0.1, 0)])
def test_transient_time_rejects_bad_arguments(example1, s, horizon):
    system, entry, v = example1
    with pytest.raises(ValueError):
        transient_time(system, v, (1e-3, 0.0), s, horizon)


def test_transient_time_reports_blow_up():
    system, entry = build('cubic1d')
    v = resolve_observable(entry, 'x')
    with pytest.raises(NonFiniteState):
        transient_time(system, v, (10.0,), 1e12, 1000)


def test_transient_time_keeps_failure_type(epidemic):
    system, entry = epidemic
    v = resolve_observable(entry, 'I')
    # alpha * S * I exceeds (1 - p) S + b, so S turns negative on the first step
    with pytest.raises(DomainEscape) as info:
        transient_time(system, v, (1e4, 3e4), 1e6, 100)
    assert info.value.step == 1

    # unbounded domain: the cube overflows to inf instead of leaving a box
    cube = build('cubic1d')[0]
    system = MapSystem(dimension=1, func=cube.func, name="cubic_unbounded",
                       domain_low=(-np.inf,), domain_high=(np.inf,))
    with pytest.raises(NonFiniteState) as info:
        transient_time(system, Observable.coordinate(0, 1), (10.0,), 1e300, 1000)
    assert not isinstance(info.value, DomainEscape)
    assert info.value.step == 6


def test_affine_observable_keeps_batched_transient_times(example1):
    system, entry, v = example1
    rng = np.random.default_rng(8)
    starts = np.column_stack([rng.uniform(1e-4, 1e-2, 100), rng.uniform(-0.05, 0.05, 100)])
    base, _, failed = first_triggers(system, v, starts, 0.005, 10_000)
    for _ in range(10):
        alpha = rng.uniform(0.5, 5.0) * rng.choice([-1.0, 1.0])
        beta = rng.uniform(-10.0, 10.0)
        times, _, failed_scaled = first_triggers(system, v.affine(alpha, beta), starts,
                                                 abs(alpha) * 0.005, 10_000)
        np.testing.assert_array_equal(times, base)
        np.testing.assert_array_equal(failed_scaled, failed)


def test_orbit_shift_batched(example1):
    system, entry, v = example1
    rng = np.random.default_rng(9)
    starts = np.column_stack([rng.uniform(1e-4, 1e-2, 1000), rng.uniform(-0.05, 0.05, 1000)])
    base, _, failed = first_triggers(system, v, starts, 0.005, 10_000)
    shifted, _, _ = first_triggers(system, v, system.evaluate(starts), 0.005, 10_000)
    keep = (base >= 1) & (failed < 0)
    assert keep.sum() > 900
    np.testing.assert_array_equal(shifted[keep], base[keep] - 1)


def test_affine_observable_keeps_transient_time(example1):
    system, entry, v = example1
    rng = np.random.default_rng(3)
    for _ in range(20):
        alpha = rng.uniform(0.5, 5.0) * rng.choice([-1.0, 1.0])
        beta = rng.uniform(-10.0, 10.0)
        xi = (rng.uniform(1e-4, 1e-2), rng.uniform(-0.05, 0.05))
        base = transient_time(system, v, xi, 0.005, 10_000)
        scaled = transient_time(system, v.affine(alpha, beta), xi, abs(alpha) * 0.005, 10_000)
        assert scaled.status is base.status
        assert scaled.time == base.time


def test_orbit_shift(example1):
    system, entry, v = example1
    s = 0.005
    xi = np.array([1e-3, 0.0])
    base = transient_time(system, v, xi, s, 10_000)
    shifted = transient_time(system, v, system.evaluate(xi), s, 10_000)
    assert base.time >= 1
    assert shifted.time == base.time - 1


def test_batched_triggers_match_single_orbits(example1):
    system, entry, v = example1
    starts = np.array([[1e-3, 0.0], [1e-2, 0.0], [0.0, 0.0], [5e-3, 0.01]])
    times, trigger, failed = first_triggers(system, v, starts, 0.005, 500)

    assert np.all(failed == -1)
    for k, xi in enumerate(starts):
        single = transient_time(system, v, xi, 0.005, 500)
        expected = single.time if single.is_finite else -1
        assert times[k] == expected


# === Transient points ===

def test_classify_transient_point(example1):
    system, entry, v = example1
    time = transient_time(system, v, (1e-3, 0.0), 0.005, 10_000).time

    assert classify_transient_point(system, v, (1e-3, 0.0), 0.005, time - 1, 10_000) \
        is TransientPointClass.IsTransientPoint
    assert classify_transient_point(system, v, (1e-3, 0.0), 0.005, time, 10_000) \
        is TransientPointClass.TooFast
    assert classify_transient_point(system, v, (0.0, 0.0), 0.005, 5, 100) \
        is TransientPointClass.NotObservedFinite


def test_classify_transient_point_needs_horizon_above_T(example1):
    system, entry, v = example1
    with pytest.raises(ValueError):
        classify_transient_point(system, v, (1e-3, 0.0), 0.005, 10, 10)


# === Candidate set ===

def test_origin_of_example1_is_in_candidate_set(example1):
    system, entry, v = example1
    assert candidate_residual(system, v, (0.0, 0.0), 1000) == 0.0
    assert in_candidate_set(system, v, (0.0, 0.0), 1000)
    assert not in_candidate_set(system, v, (0.5, 0.5), 10)


def test_linear_observable_is_exact_for_batches():
    v = Observable.linear([0.3, -1.7], offset=2.0)
    points = np.array([[1.0, 2.0], [-0.5, 0.25]])
    batched = v.evaluate(points)
    for k, p in enumerate(points):
        assert v.evaluate(p) == batched[k]


def test_linear_map_matches_matrix_product():
    A = np.array([[0.0, 1.5], [1.3, 0.0]])
    system = MapSystem.linear(A)
    x = np.array([0.2, -0.7])
    np.testing.assert_allclose(system.evaluate(x), A @ x, rtol=0, atol=1e-15)
    assert system.is_linear
