"""Forced-pendulum vector fields and their variational extensions.

The model is a pendulum with a weak time-periodic torque,

    u' = v
    v' = -sin(u) + eps * g(t),

where g is a finite trigonometric sum with base frequency omega, so g
(and hence the full field) is periodic with period 2*pi/omega.  The
torque does not depend on the state, which keeps the field Jacobian
free of eps and makes the field divergence identically zero.

Augmented systems pack matrices row-major into flat state vectors:

* plain field: ``[u, v]`` (dimension 2)
* first variational system: ``[u, v, j11, j12, j21, j22]`` (dimension 6)
* autonomized variational system: ``[u, v, s, j11, ..., j33]``
  (dimension 12), with the clock ``s`` carried as a state variable

Angles are kept on the real line and never reduced modulo 2*pi;
reduction is a plotting concern and would break the smoothness that
variational integration relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Literal

import numpy as np

TWO_PI = 2.0 * math.pi

Kind = Literal["sine", "cosine"]


@dataclass(frozen=True)
class PlanarState:
    """A point (u, v) of the phase plane: angle and angular velocity."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise ValueError(f"non-finite phase-space point ({self.u}, {self.v})")

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v])

    @staticmethod
    def from_array(y) -> "PlanarState":
        return PlanarState(float(y[0]), float(y[1]))


@dataclass(frozen=True)
class ForcingTerm:
    """One harmonic of the torque: amplitude * sin/cos(harmonic * omega * t)."""

    amplitude: float
    harmonic: int = 1
    kind: Kind = "sine"

    def __post_init__(self):
        if not math.isfinite(self.amplitude):
            raise ValueError("non-finite forcing amplitude")
        if int(self.harmonic) != self.harmonic or self.harmonic < 1:
            raise ValueError(f"harmonic must be a positive integer, got {self.harmonic}")
        if self.kind not in ("sine", "cosine"):
            raise ValueError(f"unknown forcing kind {self.kind!r}")


@dataclass(frozen=True)
class ForcingSpec:
    """Trigonometric torque spectrum with base angular frequency omega > 0.

    An empty term tuple is the unforced case g == 0.  Every term shares
    the common period 2*pi/omega, so the whole spectrum does too.
    """

    omega: float
    terms: tuple[ForcingTerm, ...] = (ForcingTerm(1.0, 1, "sine"),)

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega}")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def period(self) -> float:
        return TWO_PI / self.omega

    @cached_property
    def _compiled(self) -> tuple[tuple[float, float, bool], ...]:
        # (amplitude, angular frequency, is_sine) per term
        return tuple(
            (t.amplitude, t.harmonic * self.omega, t.kind == "sine") for t in self.terms
        )

    def value(self, t: float) -> float:
        """g(t), the torque at time t."""
        total = 0.0
        for amp, w, is_sin in self._compiled:
            total += amp * (math.sin(w * t) if is_sin else math.cos(w * t))
        return total

    def slope(self, t: float) -> float:
        """dg/dt, needed by the autonomized variational system."""
        total = 0.0
        for amp, w, is_sin in self._compiled:
            total += amp * w * (math.cos(w * t) if is_sin else -math.sin(w * t))
        return total


def sine_forcing(omega: float, amplitude: float = 1.0) -> ForcingSpec:
    """The single-harmonic torque g(t) = amplitude * sin(omega * t)."""
    return ForcingSpec(omega, (ForcingTerm(amplitude, 1, "sine"),))


@dataclass(frozen=True)
class SystemSpec:
    """Full definition of the forced system: torque spectrum and strength eps.

    With eps = 0 the field reduces exactly to the free pendulum,
    whatever the spectrum says.
    """

    forcing: ForcingSpec
    epsilon: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0.0):
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")


def free_pendulum() -> SystemSpec:
    """The unforced pendulum (eps = 0, spectrum irrelevant)."""
    return SystemSpec(ForcingSpec(1.0), 0.0)


def hamiltonian(state: PlanarState) -> float:
    """Energy v**2/2 - cos(u); conserved along unforced trajectories."""
    return 0.5 * state.v * state.v - math.cos(state.u)


def eval_field(state: PlanarState, t: float, sys: SystemSpec) -> PlanarState:
    """Right-hand side (u', v') at the given state and time."""
    accel = -math.sin(state.u)
    if sys.epsilon:
        accel += sys.epsilon * sys.forcing.value(t)
    return PlanarState(state.v, accel)


def wedge(a, b) -> float:
    """Planar cross product a1*b2 - a2*b1 of two 2-vectors."""
    return float(a[0]) * float(b[1]) - float(a[1]) * float(b[0])


def field_jacobian(u: float) -> np.ndarray:
    """State Jacobian of the field; the torque contributes nothing."""
    return np.array([[0.0, 1.0], [-math.cos(u), 0.0]])


# --- variational state containers -------------------------------------------

@dataclass(frozen=True)
class VariationalState2:
    """Base point plus sensitivity of the flow w.r.t. its initial state."""

    base: PlanarState
    jac: np.ndarray  # 2x2

    @staticmethod
    def identity(base: PlanarState) -> "VariationalState2":
        return VariationalState2(base, np.eye(2))

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.base.as_array(), np.asarray(self.jac, float).ravel()])

    @staticmethod
    def from_vector(y) -> "VariationalState2":
        y = np.asarray(y, float)
        return VariationalState2(PlanarState.from_array(y[:2]), y[2:6].reshape(2, 2).copy())


@dataclass(frozen=True)
class VariationalState3:
    """Base point, clock, and 3x3 sensitivity of the autonomized flow.

    The third state variable is the clock s with s' = 1, so the third
    row of the sensitivity matrix stays (0, 0, 1) for all times.
    """

    base: PlanarState
    clock: float
    jac: np.ndarray  # 3x3

    @staticmethod
    def identity(base: PlanarState, clock: float) -> "VariationalState3":
        return VariationalState3(base, clock, np.eye(3))

    def to_vector(self) -> np.ndarray:
        return np.concatenate(
            [self.base.as_array(), [self.clock], np.asarray(self.jac, float).ravel()]
        )

    @staticmethod
    def from_vector(y) -> "VariationalState3":
        y = np.asarray(y, float)
        return VariationalState3(
            PlanarState.from_array(y[:2]), float(y[2]), y[3:12].reshape(3, 3).copy()
        )


# --- flat right-hand sides for the integrator -------------------------------

Rhs = Callable[[float, np.ndarray], np.ndarray]


def make_field_rhs(sys: SystemSpec) -> Rhs:
    """RHS for the plain field on flat vectors [u, v]."""
    eps = sys.epsilon
    if eps == 0.0:

        def rhs(t, y):
            return np.array([y[1], -math.sin(y[0])])

        return rhs

    gval = sys.forcing.value

    def rhs(t, y):
        return np.array([y[1], -math.sin(y[0]) + eps * gval(t)])

    return rhs


def make_variational_rhs2(sys: SystemSpec) -> Rhs:
    """RHS for [u, v, j11, j12, j21, j22]; the matrix block obeys J' = Df * J."""
    eps = sys.epsilon
    gval = sys.forcing.value

    def rhs(t, y):
        u = y[0]
        c = math.cos(u)
        accel = -math.sin(u)
        if eps:
            accel += eps * gval(t)
        return np.array([y[1], accel, y[4], y[5], -c * y[2], -c * y[3]])

    return rhs


def make_variational_rhs3(sys: SystemSpec) -> Rhs:
    """RHS for [u, v, s, j11..j33] with the clock s as third state variable.

    The Jacobian of the autonomized field has the torque slope
    eps * dg/ds in the (2, 3) slot and a zero third row, so the last
    three components of the state never move.
    """
    eps = sys.epsilon
    gval = sys.forcing.value
    gslope = sys.forcing.slope

    def rhs(t, y):
        u = y[0]
        s = y[2]
        c = math.cos(u)
        accel = -math.sin(u)
        gs = 0.0
        if eps:
            accel += eps * gval(s)
            gs = eps * gslope(s)
        return np.array(
            [
                y[1],
                accel,
                1.0,
                y[6],
                y[7],
                y[8],
                -c * y[3] + gs * y[9],
                -c * y[4] + gs * y[10],
                -c * y[5] + gs * y[11],
                0.0,
                0.0,
                0.0,
            ]
        )

    return rhs


# --- typed wrappers over the flat right-hand sides ---------------------------

def variational_field_2(state: VariationalState2, t: float, sys: SystemSpec) -> VariationalState2:
    """Time derivative of a :class:`VariationalState2`, packed in the same container."""
    dy = make_variational_rhs2(sys)(t, state.to_vector())
    return VariationalState2(PlanarState(float(dy[0]), float(dy[1])), dy[2:6].reshape(2, 2))


def variational_field_3(state: VariationalState3, sys: SystemSpec) -> VariationalState3:
    """Derivative of a :class:`VariationalState3`; time enters only through the clock."""
    dy = make_variational_rhs3(sys)(0.0, state.to_vector())
    return VariationalState3(
        PlanarState(float(dy[0]), float(dy[1])), float(dy[2]), dy[3:12].reshape(3, 3)
    )
