"""Persistence integral along resonant orbits and seed extraction.

For a resonance T_c = (m/n) T the function

    M(t0) = integral over [0, m T] of  f(x(t)) ^ g(t + t0)

(wedge of the free field with the perturbing field, evaluated along the
free resonant orbit through x0) measures, to first order in eps, which
phases t0 let the orbit survive the forcing.  A simple zero of M yields
a surviving orbit whose initial condition is within O(eps) of x0 at
phase t0; if M vanishes identically, first order decides nothing.

Because the torque has no state dependence its first component is zero
and the integrand collapses to v(t) * g(t + t0).  Each evaluation
augments the free flow with one quadrature component and integrates
once, inheriting the integrator's error control; no fixed-order
quadrature over stored samples is involved.  M is m*T-periodic in t0,
and shifting x0 along the orbit by a flow time tau only shifts phases:
M_at(x0 flowed by tau)(t0) = M_at(x0)(t0 + tau).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rootfind import bracket_root
from .dynamics import ForcingSpec, PlanarState, hamiltonian
from .errors import NoSimpleZeros, SpecMismatch
from .integrator import DEFAULT_CONFIG, IntegratorConfig, integrate
from .unperturbed import ResonanceSpec

# |M'(zero)| must exceed this times max|M| / (m T) to count as simple
SIMPLE_SLOPE_FACTOR = 1e-6

# max|M| below 1e-8 * (m T) * max|v| declares the profile identically zero
DEGENERATE_FACTOR = 1e-8


@dataclass(frozen=True)
class MelnikovProfile:
    """Sampled persistence integral over one m*T period, with located zeros.

    ``samples`` has rows (t0, M(t0)) on a uniform grid over [0, m T);
    ``zeros`` holds (t0_bar, slope) pairs for the simple zeros found by
    sign-change bracketing, reduced to [0, m T).  A degenerate profile
    has ``zeros == []`` and ``degenerate`` set.
    """

    spec: ResonanceSpec
    x0: PlanarState
    samples: np.ndarray
    zeros: list[tuple[float, float]]
    degenerate: bool = False


def _check_inputs(x0: PlanarState, spec: ResonanceSpec, forcing: ForcingSpec):
    if abs(hamiltonian(x0) - spec.c.c) > 1e-9:
        raise SpecMismatch(
            f"x0 has energy {hamiltonian(x0)}, resonance expects {spec.c.c}"
        )
    if abs(forcing.omega - spec.omega) > 1e-9 * spec.omega:
        raise SpecMismatch(
            f"forcing frequency {forcing.omega} does not match the resonance's {spec.omega}"
        )


def _make_rhs(forcing: ForcingSpec, t0: float):
    gval = forcing.value

    def rhs(t, y):
        v = y[1]
        # free flow plus the quadrature v * g(t + t0); the torque's first
        # component vanishes, which kills the other wedge term
        return np.array([v, -math.sin(y[0]), v * gval(t + t0)])

    return rhs


def melnikov_value(
    t0: float,
    x0: PlanarState,
    spec: ResonanceSpec,
    forcing: ForcingSpec,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """M(t0) for the given resonance, orbit base point, and torque spectrum."""
    _check_inputs(x0, spec, forcing)
    return _value_unchecked(t0, x0, spec, forcing, cfg)


def _value_unchecked(t0, x0, spec, forcing, cfg) -> float:
    y0 = np.array([x0.u, x0.v, 0.0])
    res = integrate(_make_rhs(forcing, t0), y0, 0.0, spec.period_mT, cfg)
    return float(res.y[2])


def melnikov_profile(
    x0: PlanarState,
    spec: ResonanceSpec,
    forcing: ForcingSpec,
    sample_count: int = 256,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> MelnikovProfile:
    """Sample M on a uniform grid over [0, m T) and locate its simple zeros.

    Zeros are bracketed by sign changes on the periodically extended
    grid, refined on M itself, and reported with the slope from a
    central difference of width m T * 1e-6.  Zeros whose slope fails the
    scale-aware simplicity threshold are dropped.
    """
    if sample_count < 16:
        raise ValueError("sample_count must be at least 16")
    _check_inputs(x0, spec, forcing)
    mT = spec.period_mT
    grid = np.arange(sample_count) * (mT / sample_count)
    values = np.array([_value_unchecked(t, x0, spec, forcing, cfg) for t in grid])
    samples = np.column_stack([grid, values])

    max_speed = math.sqrt(2.0 * (spec.c.c + 1.0))
    max_abs = float(np.max(np.abs(values)))
    if max_abs < DEGENERATE_FACTOR * mT * max_speed:
        return MelnikovProfile(spec, x0, samples, [], degenerate=True)

    # periodic extension closes the last bracket back to the first sample
    ext_t = np.append(grid, mT)
    ext_m = np.append(values, values[0])

    def m_of(t):
        return _value_unchecked(t, x0, spec, forcing, cfg)

    h = mT * 1e-6
    slope_floor = SIMPLE_SLOPE_FACTOR * max_abs / mT
    zeros: list[tuple[float, float]] = []
    for i in range(sample_count):
        fa, fb = ext_m[i], ext_m[i + 1]
        if fa == 0.0:
            t_zero = ext_t[i]
        elif (fa > 0.0) == (fb > 0.0) or fb == 0.0:
            continue  # fb == 0 is picked up as the next interval's fa
        else:
            t_zero, _ = bracket_root(
                m_of, ext_t[i], ext_t[i + 1], fa, fb, xtol=1e-13 * mT, ftol=1e-11
            )
        slope = (m_of(t_zero + h) - m_of(t_zero - h)) / (2.0 * h)
        if abs(slope) <= slope_floor:
            continue
        t_zero = t_zero % mT
        if mT - t_zero < 1e-9 * mT:  # a zero at the period seam belongs at 0
            t_zero = 0.0
        zeros.append((t_zero, float(slope)))
    zeros.sort(key=lambda z: z[0])
    return MelnikovProfile(spec, x0, samples, zeros)


def melnikov_seeds(profile: MelnikovProfile) -> list[tuple[PlanarState, float]]:
    """One Newton seed (x0, t0_bar) per simple zero of the profile."""
    if profile.degenerate or not profile.zeros:
        raise NoSimpleZeros(
            "profile has no simple zeros: persistence can be neither "
            "proved nor discarded at first order"
        )
    return [(profile.x0, t_zero) for t_zero, _ in profile.zeros]
