"""Adaptive Runge-Kutta integration with dense output and event location.

The stepper is the explicit Dormand-Prince 5(4) embedded pair: fifth
order propagation, fourth order error estimate, seven stages with the
first-same-as-last property, and a free quartic interpolant on every
accepted step.  Step control uses the mixed tolerance

    scale_i = abs_tol + rel_tol * max(|y_i|, |y_new_i|)

with an RMS norm of the scaled error estimate and the usual fifth-root
step update, clipped to [0.2, 10] with safety factor 0.9.

Event location brackets sign changes of a scalar crossing function
sampled at accepted step endpoints, then refines inside the single
bracketing step using the interpolant only.  A located time therefore
does not depend on how later steps are chosen, and repeated calls with
identical inputs are bit-identical.  A zero of the crossing function at
the initial point is not a crossing; the function has to leave zero and
come back with the requested sign change to count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._rootfind import bracket_root
from .errors import EventNotFound, StepLimitExceeded, StepUnderflow

__all__ = [
    "IntegratorConfig",
    "EventSpec",
    "IntegrationResult",
    "DEFAULT_CONFIG",
    "integrate",
    "find_event",
]

# Dormand & Prince (1980) coefficients, plus the quartic interpolant
# weights popularized by Shampine's RKSUITE and MATLAB's ode45.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    np.array([], dtype=float),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
)
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# fifth-order weights minus the embedded fourth-order weights
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and budgets; max_steps guards against runaway integrations."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    initial_step: float = 1e-3
    max_step: float = 10.0
    max_steps: int = 10_000_000

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "initial_step", "max_step"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


DEFAULT_CONFIG = IntegratorConfig()


@dataclass(frozen=True)
class EventSpec:
    """A counted, optionally one-sided zero crossing of a scalar function.

    ``direction`` is the required sign of d(event_value)/dt at a counted
    crossing: +1 upward, -1 downward, 0 either.  ``target_count`` is the
    ordinal of the crossing to report; earlier matching crossings are
    counted and skipped.
    """

    event_value: Callable[[np.ndarray, float], float]
    direction: int = 0
    target_count: int = 1

    def __post_init__(self):
        if self.direction not in (-1, 0, 1):
            raise ValueError("direction must be -1, 0 or +1")
        if self.target_count < 1:
            raise ValueError("target_count must be >= 1")


@dataclass(frozen=True)
class IntegrationResult:
    """Final time and state, plus optional dense samples (one row per time)."""

    t: float
    y: np.ndarray
    samples: np.ndarray | None = None
    accepted_steps: int = 0


class _Stepper:
    """Produces accepted Dormand-Prince steps from t0 toward t_end (or forever)."""

    __slots__ = (
        "rhs", "t", "y", "f", "h_abs", "sign", "t_end",
        "rtol", "atol", "max_step", "max_steps", "attempts", "accepted", "K",
    )

    def __init__(self, rhs, y0, t0, t_end, cfg: IntegratorConfig):
        self.rhs = rhs
        self.t = float(t0)
        self.y = np.asarray(y0, dtype=float).copy()
        if self.y.ndim != 1:
            raise ValueError("state must be a flat vector")
        self.f = np.asarray(rhs(self.t, self.y), dtype=float)
        self.t_end = t_end
        self.sign = 1.0 if (t_end is None or t_end >= t0) else -1.0
        self.rtol = cfg.rel_tol
        self.atol = cfg.abs_tol
        self.max_step = cfg.max_step
        self.max_steps = cfg.max_steps
        self.h_abs = min(cfg.initial_step, cfg.max_step)
        self.attempts = 0
        self.accepted = 0
        self.K = np.empty((7, self.y.size))

    def step(self):
        """Advance one accepted step; returns (t_old, y_old, h, K).

        K holds the seven stage derivatives of the accepted step and is
        everything the interpolant needs besides (y_old, h).
        """
        rhs = self.rhs
        t = self.t
        y = self.y
        K = self.K
        inv_sqrt_n = 1.0 / math.sqrt(y.size)

        while True:
            if self.attempts >= self.max_steps:
                raise StepLimitExceeded(
                    f"no completion within {self.max_steps} step attempts (t = {t})"
                )
            self.attempts += 1

            h = self.sign * self.h_abs
            hit_end = False
            if self.t_end is not None and self.sign * (t + h - self.t_end) >= 0.0:
                h = self.t_end - t
                hit_end = True
            if t + h == t:
                raise StepUnderflow(f"step size underflow at t = {t}")

            K[0] = self.f
            for i in range(1, 6):
                dy = (K[:i].T @ _A[i]) * h
                K[i] = rhs(t + _C[i] * h, y + dy)
            y_new = y + h * (K[:6].T @ _B)
            t_new = self.t_end if hit_end else t + h
            K[6] = rhs(t_new, y_new)

            err = h * (K.T @ _E)
            scale = self.atol + self.rtol * np.maximum(np.abs(y), np.abs(y_new))
            err_norm = float(np.linalg.norm(err / scale)) * inv_sqrt_n

            if err_norm <= 1.0:
                factor = _MAX_FACTOR if err_norm == 0.0 else min(
                    _MAX_FACTOR, _SAFETY * err_norm ** -0.2
                )
                self.h_abs = min(self.h_abs * factor, self.max_step)
                self.t = t_new
                self.y = y_new
                self.f = K[6].copy()
                self.accepted += 1
                return t, y, h, K
            self.h_abs *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)


def _interpolant(y_old: np.ndarray, h: float, K: np.ndarray):
    """Quartic dense-output polynomial of one accepted step, as y(theta)."""
    D = h * (K.T @ _P)  # (dim, 4)

    def dense(theta: float) -> np.ndarray:
        th = theta
        w = np.array([th, th * th, th ** 3, th ** 4])
        return y_old + D @ w

    return dense


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t0: float,
    t1: float,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
    dense_points: Sequence[float] | None = None,
) -> IntegrationResult:
    """Integrate y' = rhs(t, y) from t0 to t1 (backward allowed).

    ``dense_points`` requests interpolated states at given times, which
    must lie within [t0, t1] and be ordered in the direction of
    integration; they are evaluated from the interpolant of whichever
    accepted step contains them, never by restarting.
    """
    if t1 == t0:
        raise ValueError("t1 must differ from t0")
    sign = 1.0 if t1 > t0 else -1.0

    pts = None
    samples = None
    emitted = 0
    if dense_points is not None:
        pts = np.asarray(dense_points, dtype=float)
        if pts.ndim != 1:
            raise ValueError("dense_points must be one-dimensional")
        if pts.size:
            if np.any(sign * np.diff(pts) < 0):
                raise ValueError("dense_points must be ordered toward t1")
            if sign * (pts[0] - t0) < 0 or sign * (pts[-1] - t1) > 0:
                raise ValueError("dense_points must lie within [t0, t1]")

    stepper = _Stepper(rhs, y0, t0, t1, cfg)

    if pts is not None:
        samples = np.empty((pts.size, stepper.y.size))
        while emitted < pts.size and pts[emitted] == t0:
            samples[emitted] = stepper.y
            emitted += 1

    while sign * (t1 - stepper.t) > 0:
        t_old, y_old, h, K = stepper.step()
        if pts is not None and emitted < pts.size:
            t_new = stepper.t
            dense = None
            while emitted < pts.size and sign * (pts[emitted] - t_new) <= 0:
                tp = pts[emitted]
                if tp == t_new:
                    samples[emitted] = stepper.y
                else:
                    if dense is None:
                        dense = _interpolant(y_old, h, K)
                    samples[emitted] = dense((tp - t_old) / h)
                emitted += 1

    return IntegrationResult(
        t=stepper.t, y=stepper.y, samples=samples, accepted_steps=stepper.accepted
    )


def find_event(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t0: float,
    event: EventSpec,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> tuple[float, np.ndarray]:
    """Integrate forward from t0 until the event's target crossing; return (t*, y*).

    Crossings are detected from sign changes of the event function at
    accepted step endpoints (so two crossings inside one step are
    invisible; crossing spacing must exceed the step size, which holds
    comfortably at the tolerances used here).  The reported crossing is
    refined on the dense interpolant until |event_value| < 1e-12.
    """
    stepper = _Stepper(rhs, y0, t0, None, cfg)
    g_prev = float(event.event_value(stepper.y, stepper.t))
    count = 0

    while True:
        try:
            t_old, y_old, h, K = stepper.step()
        except StepLimitExceeded as exc:
            raise EventNotFound(
                f"crossing {event.target_count} not reached within the step budget"
            ) from exc
        t_new = stepper.t
        g_new = float(event.event_value(stepper.y, t_new))

        crossing = 0
        at_endpoint = False
        if g_prev < 0.0 < g_new:
            crossing = 1
        elif g_prev > 0.0 > g_new:
            crossing = -1
        elif g_new == 0.0 and g_prev != 0.0:
            crossing = 1 if g_prev < 0.0 else -1
            at_endpoint = True

        if crossing and event.direction in (0, crossing):
            count += 1
            if count == event.target_count:
                if at_endpoint:
                    return t_new, stepper.y.copy()
                dense = _interpolant(y_old, h, K)

                def g_of_theta(theta: float) -> float:
                    return float(event.event_value(dense(theta), t_old + theta * h))

                xtol = 4.0 * np.finfo(float).eps * max(abs(t_old), abs(t_new), 1.0) / abs(h)
                theta, _ = bracket_root(
                    g_of_theta, 0.0, 1.0, g_prev, g_new, xtol=xtol, ftol=1e-12
                )
                return t_old + theta * h, dense(theta)
        g_prev = g_new
