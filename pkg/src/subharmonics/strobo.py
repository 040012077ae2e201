"""The stroboscopic (time-T) map, its differential, and bulk scans.

The map sends x to the flow value a time T later, starting at phase t0.
Iterates are produced by one integration over [t0, t0 + k T] sampled at
the multiples of T, not by k separate solves, so a long orbit costs one
pass of the integrator.  The differential over m iterates comes from
the first variational system integrated over [t0, t0 + m T]; since the
field is divergence-free its determinant stays 1 up to tolerance.

Loop counting uses the continuously tracked polar angle around the
origin, integrated as one extra state component.  Libration runs
clockwise in the (u, v) plane, so a closed cycle with n loops
accumulates an angle of -2*pi*n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import PlanarState, SystemSpec, make_field_rhs, make_variational_rhs2
from .errors import IntegrationError
from .integrator import DEFAULT_CONFIG, IntegratorConfig, integrate

# |v| beyond this is treated as an escaping trajectory during scans
DIVERGENCE_SPEED = 10.0


@dataclass
class StroboOrbit:
    """Iterates of one seed under the time-T map.

    ``points[0]`` is the seed itself; ``points[j]`` its j-th image.  A
    truncated orbit carries the reason in ``error`` and keeps whatever
    iterates were computed before the trouble.
    """

    points: list[PlanarState]
    t0: float
    T: float
    epsilon: float
    error: str | None = None

    @property
    def iterate_count(self) -> int:
        return len(self.points) - 1


def strobo(
    x: PlanarState,
    t0: float,
    sys: SystemSpec,
    T: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> PlanarState:
    """One application of the time-T map at phase t0."""
    res = integrate(make_field_rhs(sys), x.as_array(), t0, t0 + T, cfg)
    return PlanarState.from_array(res.y)


def strobo_iterate(
    x: PlanarState,
    t0: float,
    sys: SystemSpec,
    T: float,
    k: int,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> StroboOrbit:
    """k successive images of x, from a single solve sampled every T."""
    if k < 1:
        raise ValueError("iterate count must be >= 1")
    times = t0 + np.arange(k + 1) * T
    res = integrate(make_field_rhs(sys), x.as_array(), t0, times[-1], cfg, dense_points=times)
    points = [PlanarState.from_array(row) for row in res.samples]
    return StroboOrbit(points=points, t0=t0, T=T, epsilon=sys.epsilon)


def monodromy(
    x: PlanarState,
    t0: float,
    sys: SystemSpec,
    duration: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Differential of the flow map over [t0, t0 + duration] at x.

    For duration = m T this is the differential of the m-th map iterate,
    obtained in one pass of the first variational system seeded with the
    identity matrix.
    """
    if duration == 0.0:
        return np.eye(2)
    y0 = np.array([x.u, x.v, 1.0, 0.0, 0.0, 1.0])
    res = integrate(make_variational_rhs2(sys), y0, t0, t0 + duration, cfg)
    return res.y[2:6].reshape(2, 2).copy()


def scan(
    seeds: list[PlanarState],
    t0: float,
    sys: SystemSpec,
    T: float,
    k: int,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> list[StroboOrbit]:
    """Iterate every seed; output order equals input order.

    Seeds are independent work items.  A failure is recorded on its own
    orbit and does not abort the scan; iterates whose speed exceeds
    DIVERGENCE_SPEED mark the orbit as escaping and truncate it there.
    """
    orbits = []
    for seed in seeds:
        try:
            orbit = strobo_iterate(seed, t0, sys, T, k, cfg)
        except IntegrationError as exc:
            orbit = StroboOrbit(points=[seed], t0=t0, T=T, epsilon=sys.epsilon,
                                error=f"{type(exc).__name__}: {exc}")
        else:
            for j, p in enumerate(orbit.points):
                if abs(p.v) > DIVERGENCE_SPEED:
                    orbit.points = orbit.points[:j]
                    orbit.error = f"escaped at iterate {j} (|v| > {DIVERGENCE_SPEED})"
                    break
        orbits.append(orbit)
    return orbits


def make_angle_rhs(sys: SystemSpec):
    """RHS for [u, v, theta] where theta tracks the polar angle of (u, v)."""
    eps = sys.epsilon
    gval = sys.forcing.value

    def rhs(t, y):
        u = y[0]
        v = y[1]
        accel = -math.sin(u)
        if eps:
            accel += eps * gval(t)
        r2 = u * u + v * v
        return np.array([v, accel, (u * accel - v * v) / r2])

    return rhs


def winding_angle(
    x: PlanarState,
    t0: float,
    sys: SystemSpec,
    duration: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """Accumulated polar angle around the origin over [t0, t0 + duration].

    The trajectory must stay away from the origin.  For a closed cycle
    with n clockwise loops the result is -2*pi*n.
    """
    if x.u == 0.0 and x.v == 0.0:
        raise ValueError("winding is undefined through the origin")
    y0 = np.array([x.u, x.v, 0.0])
    res = integrate(make_angle_rhs(sys), y0, t0, t0 + duration, cfg)
    return float(res.y[2])
