import math

import numpy as np
import pytest

from subharmonics import (
    ForcingSpec,
    ForcingTerm,
    PlanarState,
    SystemSpec,
    eval_field,
    free_pendulum,
    hamiltonian,
    integrate,
    sine_forcing,
    wedge,
)
from subharmonics.dynamics import (
    VariationalState2,
    VariationalState3,
    field_jacobian,
    make_field_rhs,
    make_variational_rhs2,
    make_variational_rhs3,
    variational_field_2,
    variational_field_3,
)
from subharmonics.unperturbed import period_oracle

TWO_PI = 2.0 * math.pi


def test_field_at_equilibria():
    sys0 = free_pendulum()
    origin = eval_field(PlanarState(0.0, 0.0), 3.7, sys0)
    assert origin.u == 0.0 and origin.v == 0.0
    saddle = eval_field(PlanarState(math.pi, 0.0), 0.0, sys0)
    assert saddle.u == 0.0
    assert abs(saddle.v) < 1e-15  # sin(pi) only vanishes to round-off


def test_field_with_forcing_quarter_period():
    omega = 2.0
    sys = SystemSpec(sine_forcing(omega), 0.2)
    T = TWO_PI / omega
    out = eval_field(PlanarState(0.0, 1.6), T / 4, sys)
    assert out.u == 1.6
    assert out.v == pytest.approx(0.2, abs=1e-15)


def test_hamiltonian_reference_values():
    assert hamiltonian(PlanarState(0.0, 0.0)) == -1.0
    assert hamiltonian(PlanarState(math.pi, 0.0)) == pytest.approx(1.0, abs=1e-15)
    assert hamiltonian(PlanarState(0.0, 1.6)) == pytest.approx(0.28, abs=1e-15)


def test_wedge_identities(rng):
    assert wedge((1.0, 0.0), (0.0, 1.0)) == 1.0
    assert wedge((2.0, 3.0), (2.0, 3.0)) == 0.0
    for _ in range(20):
        u, v, g = rng.uniform(-3, 3, 3)
        # torque fields have no first component, so the wedge collapses
        assert wedge((v, -math.sin(u)), (0.0, g)) == pytest.approx(v * g, rel=1e-15)
        a, b = rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2)
        assert wedge(a, b) == pytest.approx(-wedge(b, a), abs=1e-15)


def test_planar_state_rejects_non_finite():
    with pytest.raises(ValueError):
        PlanarState(float("nan"), 0.0)
    with pytest.raises(ValueError):
        PlanarState(0.0, float("inf"))


def test_forcing_validation():
    with pytest.raises(ValueError):
        ForcingSpec(0.0)
    with pytest.raises(ValueError):
        ForcingTerm(1.0, 0, "sine")
    with pytest.raises(ValueError):
        ForcingTerm(1.0, 1, "tan")
    with pytest.raises(ValueError):
        SystemSpec(ForcingSpec(1.0), -0.1)


def test_empty_spectrum_is_unforced():
    spec = ForcingSpec(2.0, ())
    assert spec.value(0.37) == 0.0
    assert spec.slope(0.37) == 0.0


def test_forcing_periodicity(rng):
    for _ in range(25):
        terms = tuple(
            ForcingTerm(
                float(rng.uniform(-5, 5)),
                int(rng.integers(1, 5)),
                "sine" if rng.random() < 0.5 else "cosine",
            )
            for _ in range(rng.integers(1, 4))
        )
        forcing = ForcingSpec(float(rng.uniform(0.5, 4.0)), terms)
        sys = SystemSpec(forcing, float(rng.uniform(0.0, 1.0)))
        x = PlanarState(float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
        t = float(rng.uniform(-10, 10))
        a = eval_field(x, t, sys)
        b = eval_field(x, t + forcing.period, sys)
        assert a.v == pytest.approx(b.v, abs=1e-12)
        assert a.u == b.u


def test_field_jacobian_entries():
    assert np.allclose(field_jacobian(0.0), [[0, 1], [-1, 0]])
    assert np.allclose(field_jacobian(math.pi), [[0, 1], [1, 0]], atol=1e-15)


def test_variational_field_2_matrix_part():
    sys0 = free_pendulum()
    state = VariationalState2.identity(PlanarState(0.0, 0.9))
    deriv = variational_field_2(state, 0.0, sys0)
    assert np.allclose(deriv.jac, [[0, 1], [-1, 0]])
    state = VariationalState2.identity(PlanarState(math.pi, 0.9))
    deriv = variational_field_2(state, 0.0, sys0)
    assert np.allclose(deriv.jac, [[0, 1], [1, 0]], atol=1e-15)


def test_variational_det_one_over_forcing_period(rng):
    # the field is divergence-free, so the propagated matrix keeps det 1
    omega = 2.3
    sys = SystemSpec(sine_forcing(omega), 0.0)
    rhs = make_variational_rhs2(sys)
    for _ in range(4):
        x = rng.uniform(-1.2, 1.2), rng.uniform(-1.5, 1.5)
        y0 = np.array([x[0], x[1], 1.0, 0.0, 0.0, 1.0])
        res = integrate(rhs, y0, 0.0, TWO_PI / omega)
        det = np.linalg.det(res.y[2:6].reshape(2, 2))
        assert det == pytest.approx(1.0, abs=1e-8)


def test_variational3_reduces_to_variational2_when_unforced():
    sys0 = free_pendulum()
    state3 = VariationalState3.identity(PlanarState(0.4, 1.1), 0.0)
    deriv3 = variational_field_3(state3, sys0)
    assert np.all(deriv3.jac[:, 2] == 0.0)  # no torque, no clock sensitivity
    state2 = VariationalState2.identity(PlanarState(0.4, 1.1))
    deriv2 = variational_field_2(state2, 0.0, sys0)
    assert np.allclose(deriv3.jac[:2, :2], deriv2.jac)
    assert deriv3.clock == 1.0


def test_variational3_third_row_is_preserved():
    sys = SystemSpec(sine_forcing(2.0), 0.3)
    y0 = np.concatenate([[0.2, 1.3, 0.5], np.eye(3).ravel()])
    res = integrate(make_variational_rhs3(sys), y0, 0.0, 7.0)
    M = res.y[3:12].reshape(3, 3)
    assert np.all(M[2] == np.array([0.0, 0.0, 1.0]))


def test_variational3_clock_column_matches_finite_difference(tight_cfg):
    sys = SystemSpec(sine_forcing(2.0), 0.2)
    t0, span, h = 0.7, 6.0, 1e-6
    y0 = np.concatenate([[0.2, 1.3, t0], np.eye(3).ravel()])
    M = integrate(make_variational_rhs3(sys), y0, 0.0, span, tight_cfg).y[3:12].reshape(3, 3)
    rhs = make_field_rhs(sys)
    plus = integrate(rhs, [0.2, 1.3], t0 + h, t0 + h + span, tight_cfg).y
    minus = integrate(rhs, [0.2, 1.3], t0 - h, t0 - h + span, tight_cfg).y
    fd = (plus - minus) / (2 * h)
    assert np.max(np.abs(M[:2, 2] - fd)) < 1e-5


def test_energy_conserved_unforced():
    v0 = 1.6
    T_c = period_oracle(v0)
    sys0 = free_pendulum()
    times = np.linspace(0.0, 3 * T_c, 121)
    res = integrate(make_field_rhs(sys0), [0.0, v0], 0.0, 3 * T_c, dense_points=times)
    energies = 0.5 * res.samples[:, 1] ** 2 - np.cos(res.samples[:, 0])
    assert np.max(np.abs(energies - 0.28)) < 1e-8


def test_state_containers_round_trip():
    s2 = VariationalState2(PlanarState(0.3, -1.2), np.array([[1.0, 2.0], [3.0, 4.0]]))
    back = VariationalState2.from_vector(s2.to_vector())
    assert back.base == s2.base and np.all(back.jac == s2.jac)
    s3 = VariationalState3(PlanarState(0.3, -1.2), 5.0, np.arange(9.0).reshape(3, 3))
    back3 = VariationalState3.from_vector(s3.to_vector())
    assert back3.base == s3.base and back3.clock == 5.0 and np.all(back3.jac == s3.jac)
