import math

import numpy as np
import pytest

from subharmonics import (
    EventSpec,
    IntegratorConfig,
    PlanarState,
    free_pendulum,
    integrate,
    find_event,
)
from subharmonics.dynamics import make_field_rhs
from subharmonics.errors import EventNotFound, StepLimitExceeded
from subharmonics.unperturbed import period_oracle

TWO_PI = 2.0 * math.pi


def _oscillator(t, y):
    return np.array([y[1], -y[0]])


def test_rejects_zero_span():
    with pytest.raises(ValueError):
        integrate(_oscillator, [1.0, 0.0], 1.0, 1.0)


def test_harmonic_oscillator_closed_form():
    res = integrate(_oscillator, [1.0, 0.0], 0.0, TWO_PI)
    assert np.linalg.norm(res.y - [1.0, 0.0]) < 1e-8


def test_pendulum_period_closure():
    v0 = 1.6
    T_c = period_oracle(v0)
    rhs = make_field_rhs(free_pendulum())
    res = integrate(rhs, [0.0, v0], 0.0, T_c)
    assert np.linalg.norm(res.y - [0.0, v0]) < 1e-7
    energy = 0.5 * res.y[1] ** 2 - math.cos(res.y[0])
    assert abs(energy - 0.28) < 1e-8


def test_backward_integration_inverts_forward():
    rhs = make_field_rhs(free_pendulum())
    fwd = integrate(rhs, [0.0, 1.6], 0.0, 3.1)
    back = integrate(rhs, fwd.y, 3.1, 0.0)
    assert np.linalg.norm(back.y - [0.0, 1.6]) < 1e-9


def test_dense_samples_match_direct_integration():
    rhs = make_field_rhs(free_pendulum())
    times = np.array([0.0, 0.7, 1.9, 3.3, 4.0])
    res = integrate(rhs, [0.0, 1.6], 0.0, 4.0, dense_points=times)
    assert res.samples.shape == (5, 2)
    assert np.all(res.samples[0] == [0.0, 1.6])
    assert np.all(res.samples[-1] == res.y)
    for t, row in zip(times[1:-1], res.samples[1:-1]):
        direct = integrate(rhs, [0.0, 1.6], 0.0, float(t))
        assert np.linalg.norm(row - direct.y) < 1e-9


def test_dense_points_validation():
    rhs = make_field_rhs(free_pendulum())
    with pytest.raises(ValueError):
        integrate(rhs, [0.0, 1.6], 0.0, 1.0, dense_points=[0.5, 0.2])
    with pytest.raises(ValueError):
        integrate(rhs, [0.0, 1.6], 0.0, 1.0, dense_points=[0.5, 1.2])


def test_tolerance_halving_changes_little():
    rhs = make_field_rhs(free_pendulum())
    T_c = period_oracle(1.6)
    loose = IntegratorConfig(rel_tol=1e-8, abs_tol=1e-8)
    tight = IntegratorConfig(rel_tol=5e-9, abs_tol=5e-9)
    a = integrate(rhs, [0.0, 1.6], 0.0, 10 * T_c, loose).y
    b = integrate(rhs, [0.0, 1.6], 0.0, 10 * T_c, tight).y
    # both runs carry an accumulated error of roughly tol per unit time
    assert np.linalg.norm(a - b) < 1e-8 * (10 * T_c) * 100


def test_step_limit():
    cfg = IntegratorConfig(max_steps=10)
    with pytest.raises(StepLimitExceeded):
        integrate(make_field_rhs(free_pendulum()), [0.0, 1.6], 0.0, 100.0, cfg)


def test_event_upward_return_is_the_period():
    rhs = make_field_rhs(free_pendulum())
    event = EventSpec(lambda y, t: y[0], direction=+1, target_count=1)
    t_star, y_star = find_event(rhs, [0.0, 1.6], 0.0, event)
    assert abs(t_star - period_oracle(1.6)) < 1e-7
    assert abs(y_star[0]) < 1e-12  # refinement drives the event function down
    assert y_star[1] == pytest.approx(1.6, abs=1e-8)


def test_event_any_direction_finds_half_period():
    rhs = make_field_rhs(free_pendulum())
    event = EventSpec(lambda y, t: y[0], direction=0, target_count=1)
    t_star, y_star = find_event(rhs, [0.0, 1.6], 0.0, event)
    assert abs(t_star - 0.5 * period_oracle(1.6)) < 1e-7
    assert y_star[1] == pytest.approx(-1.6, abs=1e-8)


def test_event_counting_reaches_second_crossing():
    rhs = make_field_rhs(free_pendulum())
    event = EventSpec(lambda y, t: y[0], direction=0, target_count=2)
    t_star, _ = find_event(rhs, [0.0, 1.6], 0.0, event)
    assert abs(t_star - period_oracle(1.6)) < 1e-7


def test_event_never_crossing_raises():
    rhs = make_field_rhs(free_pendulum())
    cfg = IntegratorConfig(max_steps=2000, max_step=1.0)
    event = EventSpec(lambda y, t: 1.0 + y[1] ** 2, direction=0, target_count=1)
    with pytest.raises(EventNotFound):
        find_event(rhs, [0.0, 1.6], 0.0, event, cfg)


def test_event_is_bit_deterministic():
    rhs = make_field_rhs(free_pendulum())
    event = EventSpec(lambda y, t: y[0], direction=+1, target_count=1)
    first = find_event(rhs, [0.0, 1.6], 0.0, event)
    second = find_event(rhs, [0.0, 1.6], 0.0, event)
    assert first[0] == second[0]
    assert np.all(first[1] == second[1])


def test_config_and_event_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(max_steps=0)
    with pytest.raises(ValueError):
        EventSpec(lambda y, t: y[0], direction=2)
    with pytest.raises(ValueError):
        EventSpec(lambda y, t: y[0], target_count=0)
