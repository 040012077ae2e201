"""The free pendulum: librational periods, their inversion, and resonances.

Inside the homoclinic loop every energy level c in (-1, 1) carries a
periodic orbit.  Its period T_c is computed as the return time of the
section point (0, v0), v0 = sqrt(2(c+1)), to {u = 0, v > 0}; quadrature
of 1/v along the orbit would hit an integrable endpoint singularity and
is avoided.  An independent closed form, T_c = 4 K(v0/2) with K the
complete elliptic integral of the first kind, serves as the oracle for
cross-checks; it is evaluated by the arithmetic-geometric mean, not by
the flow, so the two routes share no code.

A resonance pairs a level with a forcing period through
T_c = (m/n) T: after m applications of the time-T map the continuous
orbit has closed n loops, so its rotation number is n/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import PlanarState, free_pendulum, make_field_rhs
from .errors import NoConvergence, OutOfRange, Unattainable
from .integrator import DEFAULT_CONFIG, EventSpec, IntegratorConfig, find_event

TWO_PI = 2.0 * math.pi

# v0 at the homoclinic level c = 1; the open librational range is (0, 2)
V_SEPARATRIX = 2.0


@dataclass(frozen=True)
class EnergyLevel:
    """Energy c of a librational orbit; the open interval (-1, 1) only."""

    c: float

    def __post_init__(self):
        if not (-1.0 < self.c < 1.0):
            raise OutOfRange(f"energy level must lie in (-1, 1), got {self.c}")

    def __float__(self) -> float:
        return self.c


@dataclass(frozen=True)
class ResonanceSpec:
    """Resonant pairing T_c = (m/n) T of a level with a forcing period.

    m is the map period, n the loop count; they must be coprime.  The
    stored data are validated against each other rather than recomputed.
    """

    m: int
    n: int
    T: float
    omega: float
    c: EnergyLevel
    T_c: float

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive integers")
        if math.gcd(self.m, self.n) != 1:
            raise ValueError(f"m = {self.m} and n = {self.n} must be coprime")
        if not self.T > 0.0:
            raise ValueError("forcing period must be positive")
        if abs(self.omega * self.T - TWO_PI) > 1e-9 * TWO_PI:
            raise ValueError("omega and T are inconsistent")
        if abs(self.T_c - (self.m / self.n) * self.T) > 1e-9 * abs(self.T_c):
            raise ValueError(
                f"resonance violated: T_c = {self.T_c} vs (m/n) T = {(self.m / self.n) * self.T}"
            )

    @property
    def period_mT(self) -> float:
        """Duration of one full cycle of the time-T map, m*T = n*T_c."""
        return self.m * self.T


def ic_on_axis(c: float | EnergyLevel) -> PlanarState:
    """Initial condition (0, v0) on the upward vertical axis for level c."""
    level = c if isinstance(c, EnergyLevel) else EnergyLevel(float(c))
    return PlanarState(0.0, math.sqrt(2.0 * (level.c + 1.0)))


def _check_section_speed(v0: float):
    if not (0.0 < v0 < V_SEPARATRIX):
        raise OutOfRange(f"section speed must lie in (0, 2), got {v0}")


def period_of_level(v0: float, cfg: IntegratorConfig = DEFAULT_CONFIG) -> float:
    """Return time of (0, v0) to {u = 0, v > 0} under the free flow.

    Near v0 = 2 the period grows without bound and the crossing may not
    fit in the step budget, in which case EventNotFound propagates.
    """
    _check_section_speed(v0)
    rhs = make_field_rhs(free_pendulum())
    event = EventSpec(lambda y, t: y[0], direction=+1, target_count=1)
    t_star, _ = find_event(rhs, [0.0, v0], 0.0, event, cfg)
    return t_star


def agm_elliptic_k(k: float) -> float:
    """Complete elliptic integral K(k), modulus convention, by the AGM.

    The iteration converges quadratically; a handful of sweeps reaches
    full double precision for any k in [0, 1).
    """
    if not (0.0 <= k < 1.0):
        raise OutOfRange(f"modulus must lie in [0, 1), got {k}")
    a = 1.0
    b = math.sqrt(1.0 - k * k)
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def period_oracle(v0: float) -> float:
    """Closed-form librational period 4 K(v0/2); independent of the flow."""
    _check_section_speed(v0)
    return 4.0 * agm_elliptic_k(0.5 * v0)


def resonance_from_level(
    v0: float, m: int, n: int, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> ResonanceSpec:
    """Build the resonance at a prescribed level: T is derived as (n/m) T_c."""
    _check_section_speed(v0)
    T_c = period_of_level(v0, cfg)
    T = (n / m) * T_c
    return ResonanceSpec(
        m=m, n=n, T=T, omega=TWO_PI / T, c=EnergyLevel(0.5 * v0 * v0 - 1.0), T_c=T_c
    )


def level_for_period(
    T_target: float, m: int, n: int, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> ResonanceSpec:
    """Find the level whose orbit period equals (m/n) * T_target.

    The period function is strictly increasing from 2*pi toward the
    separatrix asymptote, so the target is bracketed by pushing v0
    geometrically toward 2 and then bisected to width 1e-12 in v0.
    Secant-type iterations are avoided; the asymptote punishes them.
    """
    if not T_target > 0.0:
        raise Unattainable("forcing period must be positive")
    period_req = (m / n) * T_target
    if period_req <= TWO_PI:
        raise Unattainable(
            f"requested orbit period {period_req} is not above the minimal period 2*pi"
        )

    lo = 1e-8
    if period_of_level(lo, cfg) >= period_req:
        raise Unattainable("requested orbit period is below the attainable range")

    hi = None
    gap = 1.0  # distance of the trial speed below the separatrix value
    for _ in range(40):
        trial = V_SEPARATRIX - gap
        if period_of_level(trial, cfg) > period_req:
            hi = trial
            break
        lo = trial
        gap *= 0.5
    if hi is None:
        raise NoConvergence("could not bracket the requested period below the separatrix")

    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if period_of_level(mid, cfg) < period_req:
            lo = mid
        else:
            hi = mid
    v0 = 0.5 * (lo + hi)
    T_c = period_of_level(v0, cfg)
    if abs(T_c - period_req) > 1e-9 * period_req:
        raise NoConvergence(
            f"bisection stalled: reached T_c = {T_c} for target {period_req}"
        )
    return ResonanceSpec(
        m=m,
        n=n,
        T=T_target,
        omega=TWO_PI / T_target,
        c=EnergyLevel(0.5 * v0 * v0 - 1.0),
        T_c=T_c,
    )
