import math

import numpy as np
import pytest

from subharmonics import (
    PlanarState,
    SystemSpec,
    free_pendulum,
    hamiltonian,
    integrate,
    monodromy,
    scan,
    sine_forcing,
    strobo,
    strobo_iterate,
    winding_angle,
)
from subharmonics.dynamics import make_field_rhs

TWO_PI = 2.0 * math.pi


def _on_level(tau: float) -> PlanarState:
    """A point of the reference level set, reached by flowing (0, 1.6)."""
    res = integrate(make_field_rhs(free_pendulum()), [0.0, 1.6], 0.0, tau)
    return PlanarState.from_array(res.y)


def test_full_period_map_is_identity(spec31):
    x = PlanarState(0.0, 1.6)
    img = strobo(x, 0.0, free_pendulum(), spec31.T_c)
    assert math.hypot(img.u - x.u, img.v - x.v) < 1e-7


def test_resonant_cycle_closes_after_m_iterates(spec31):
    sys0 = free_pendulum()
    x = PlanarState(0.0, 1.6)
    orbit = strobo_iterate(x, 0.0, sys0, spec31.T, 3)
    last = orbit.points[3]
    assert math.hypot(last.u - x.u, last.v - x.v) < 1e-7
    first = orbit.points[1]
    assert math.hypot(first.u - x.u, first.v - x.v) > 0.1  # not a fixed point of s


def test_iterates_agree_with_single_applications(spec31):
    sys0 = free_pendulum()
    x = PlanarState(0.0, 1.6)
    orbit = strobo_iterate(x, 0.0, sys0, spec31.T, 3)
    step = strobo(x, 0.0, sys0, spec31.T)
    assert math.hypot(orbit.points[1].u - step.u, orbit.points[1].v - step.v) < 1e-9
    assert orbit.iterate_count == 3
    assert orbit.points[0] == x


def test_iterates_stay_on_the_level(spec31):
    orbit = strobo_iterate(PlanarState(0.0, 1.6), 0.0, free_pendulum(), 1.234, 40)
    for p in orbit.points:
        assert abs(hamiltonian(p) - 0.28) < 1e-7


def test_incommensurate_period_never_returns(spec31):
    T = spec31.T_c / math.sqrt(2.0)
    orbit = strobo_iterate(PlanarState(0.0, 1.6), 0.0, free_pendulum(), T, 100)
    start = orbit.points[0]
    dmin = min(math.hypot(p.u - start.u, p.v - start.v) for p in orbit.points[1:])
    assert dmin > 1e-3


def test_unforced_map_ignores_the_phase(rng, spec31):
    sys0 = free_pendulum()
    for _ in range(3):
        x = _on_level(float(rng.uniform(0, spec31.T_c)))
        a = strobo(x, 0.0, sys0, 2.2)
        b = strobo(x, 1.7, sys0, 2.2)
        assert math.hypot(a.u - b.u, a.v - b.v) < 1e-9


def test_winding_matches_rotation_number(spec31, spec52):
    sys0 = free_pendulum()
    for spec, n in ((spec31, 1), (spec52, 2)):
        angle = winding_angle(PlanarState(0.0, 1.6), 0.0, sys0, spec.m * spec.T)
        assert abs(abs(angle) - TWO_PI * n) < 1e-6
        assert angle < 0  # libration is clockwise


def test_monodromy_zero_duration_is_identity():
    assert np.all(monodromy(PlanarState(0.3, 1.0), 0.0, free_pendulum(), 0.0) == np.eye(2))


def test_monodromy_is_area_preserving(rng):
    for _ in range(3):
        sys = SystemSpec(sine_forcing(float(rng.uniform(1.5, 3.0))), float(rng.uniform(0, 0.3)))
        x = PlanarState(float(rng.uniform(-1, 1)), float(rng.uniform(0.8, 1.8)))
        M = monodromy(x, 0.0, sys, float(rng.uniform(2.0, 9.0)))
        assert abs(np.linalg.det(M) - 1.0) < 1e-6


def test_monodromy_matches_finite_differences(rng):
    h = 1e-6
    for _ in range(3):
        sys = SystemSpec(sine_forcing(2.1), float(rng.uniform(0, 0.3)))
        x = PlanarState(float(rng.uniform(-1, 1)), float(rng.uniform(0.9, 1.7)))
        duration = 5.0
        M = monodromy(x, 0.3, sys, duration)
        rhs = make_field_rhs(sys)
        cols = []
        for k in range(2):
            e = np.zeros(2)
            e[k] = h
            plus = integrate(rhs, x.as_array() + e, 0.3, 0.3 + duration).y
            minus = integrate(rhs, x.as_array() - e, 0.3, 0.3 + duration).y
            cols.append((plus - minus) / (2 * h))
        assert np.max(np.abs(M - np.column_stack(cols))) < 1e-5


def test_scan_preserves_input_order(spec31):
    sys = SystemSpec(sine_forcing(spec31.omega), 0.2)
    seeds = [PlanarState(0.0, v) for v in (1.5, 1.6, 1.7)]
    orbits = scan(seeds, 0.0, sys, spec31.T, 5)
    assert [o.points[0] for o in orbits] == seeds
    assert all(o.error is None for o in orbits)
    assert all(o.iterate_count == 5 for o in orbits)


def test_scan_flags_escaping_seed(spec31):
    # energy conservation caps the speed of librational seeds, so the
    # escape guard can only fire on seeds already beyond it
    sys = SystemSpec(sine_forcing(spec31.omega), 0.2)
    seeds = [PlanarState(0.0, 1.6), PlanarState(0.0, 10.2)]
    orbits = scan(seeds, 0.0, sys, spec31.T, 10)
    assert orbits[0].error is None
    assert orbits[1].error is not None and "escaped" in orbits[1].error
    assert len(orbits[1].points) < 11


def test_scan_records_per_seed_failures(spec31):
    from subharmonics import IntegratorConfig

    sys = SystemSpec(sine_forcing(spec31.omega), 0.2)
    cfg = IntegratorConfig(max_steps=40)
    orbits = scan([PlanarState(0.0, 1.6)], 0.0, sys, spec31.T, 10, cfg)
    assert orbits[0].error is not None and "StepLimitExceeded" in orbits[0].error
    assert orbits[0].points == [PlanarState(0.0, 1.6)]


def test_phase_shift_by_full_period_changes_nothing(spec31):
    sys = SystemSpec(sine_forcing(spec31.omega), 0.2)
    x = PlanarState(0.0, 1.62)
    a = strobo_iterate(x, 0.0, sys, spec31.T, 6)
    b = strobo_iterate(x, spec31.T, sys, spec31.T, 6)
    for pa, pb in zip(a.points, b.points):
        assert math.hypot(pa.u - pb.u, pa.v - pb.v) < 1e-7
