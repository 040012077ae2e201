"""Subharmonic periodic orbits of the periodically forced pendulum.

Workflow: pick a resonance (m, n) of the free pendulum, evaluate the
persistence integral along the resonant orbit, take its simple zeros as
phases, and shoot with Newton on the stroboscopic map (or on the
return map to the vertical axis) to land on the orbit that survives
the forcing.  Converged orbits can be continued in the forcing
strength and are classified by their Floquet multipliers.
"""

from .dynamics import (
    ForcingSpec,
    ForcingTerm,
    PlanarState,
    SystemSpec,
    eval_field,
    free_pendulum,
    hamiltonian,
    sine_forcing,
    wedge,
)
from .integrator import DEFAULT_CONFIG, EventSpec, IntegratorConfig, integrate, find_event
from .melnikov import MelnikovProfile, melnikov_profile, melnikov_seeds, melnikov_value
from .solvers import (
    NewtonOptions,
    NewtonReport,
    PeriodicOrbitRecord,
    StepPolicy,
    classify,
    continue_in_epsilon,
    newton_poincare,
    newton_strobo,
)
from .strobo import StroboOrbit, monodromy, scan, strobo, strobo_iterate, winding_angle
from .unperturbed import (
    EnergyLevel,
    ResonanceSpec,
    ic_on_axis,
    level_for_period,
    period_of_level,
    period_oracle,
    resonance_from_level,
)

__all__ = [
    "ForcingSpec",
    "ForcingTerm",
    "PlanarState",
    "SystemSpec",
    "eval_field",
    "free_pendulum",
    "hamiltonian",
    "sine_forcing",
    "wedge",
    "DEFAULT_CONFIG",
    "EventSpec",
    "IntegratorConfig",
    "integrate",
    "find_event",
    "MelnikovProfile",
    "melnikov_profile",
    "melnikov_seeds",
    "melnikov_value",
    "NewtonOptions",
    "NewtonReport",
    "PeriodicOrbitRecord",
    "StepPolicy",
    "classify",
    "continue_in_epsilon",
    "newton_poincare",
    "newton_strobo",
    "StroboOrbit",
    "monodromy",
    "scan",
    "strobo",
    "strobo_iterate",
    "winding_angle",
    "EnergyLevel",
    "ResonanceSpec",
    "ic_on_axis",
    "level_for_period",
    "period_of_level",
    "period_oracle",
    "resonance_from_level",
]

__version__ = "0.1.0"
