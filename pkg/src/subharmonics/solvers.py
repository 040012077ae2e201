"""Newton shooting for periodic points, continuation, and stability.

Two shooting formulations are provided.  The stroboscopic solver fixes
the phase t0 and solves s^m(x) - x = 0 in the plane; its Jacobian is
the monodromy matrix minus the identity, obtained from one pass of the
first variational system over [t0, t0 + m T].  The section solver works
on the vertical axis {u = 0} with unknowns (v0, t0); one application of
the return map is located by event detection, its differential is
assembled from the autonomized 3x3 sensitivity, the field at the
crossing, and the implicit-function quotients for the return time, and
the differential over n returns is chained crossing by crossing.

Newton steps solve the 2x2 linear system directly (LU with partial
pivoting); no matrix is inverted.  A Jacobian is treated as singular
when an eigenvalue sits within 1e-10 of zero or when its smallest
singular value is negligible against the largest; the second test is
what actually fires on the eps = 0 resonant continuum, where the exact
unit multiplier is blurred by integration error.

Failures raise exceptions that carry the iterate log accumulated so
far, so diverging runs remain inspectable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import PlanarState, SystemSpec, make_variational_rhs2, make_variational_rhs3
from .errors import (
    Diverged,
    InconsistentMonodromy,
    MaxIters,
    NewtonFailure,
    SingularJacobian,
    StepTooSmall,
    TangentialCrossing,
)
from .integrator import DEFAULT_CONFIG, EventSpec, IntegratorConfig, find_event, integrate
from .strobo import monodromy as flow_monodromy
from .strobo import strobo, winding_angle

TWO_PI = 2.0 * math.pi

# classification margin on |trace| around the parabolic boundary 2
_TRACE_TOL = 1e-8
# admissible drift of det(monodromy) from 1 before the matrix is rejected
_DET_TOL = 1e-4
# transversality floor for the section speed in the return-map solver
_TANGENT_TOL = 1e-8


@dataclass(frozen=True)
class NewtonOptions:
    residual_tol: float = 1e-10
    max_iters: int = 20
    divergence_radius: float = 1.0

    def __post_init__(self):
        if self.residual_tol <= 0 or self.max_iters < 1 or self.divergence_radius <= 0:
            raise ValueError("Newton options must be positive")


@dataclass
class NewtonReport:
    """Iterate log: one (point, residual norm) entry per residual evaluation."""

    iterates: list[tuple[np.ndarray, float]] = field(default_factory=list)
    converged: bool = False
    failure_kind: str | None = None

    @property
    def iteration_count(self) -> int:
        """Number of Newton updates actually applied."""
        return max(0, len(self.iterates) - 1)

    @property
    def residuals(self) -> list[float]:
        return [r for _, r in self.iterates]


@dataclass(frozen=True)
class PeriodicOrbitRecord:
    """A converged periodic point with its linearization and stability."""

    x_eps: PlanarState
    t0: float
    m: int
    n: int
    epsilon: float
    monodromy: np.ndarray
    multipliers: tuple[complex, complex]
    stability: str
    residual: float
    system: SystemSpec
    T: float


def classify(mono: np.ndarray) -> tuple[str, tuple[complex, complex]]:
    """Stability label and Floquet multipliers of a 2x2 monodromy matrix.

    The map is area preserving, so the label follows from the trace:
    |trace| > 2 is a saddle, |trace| < 2 elliptic, the margin parabolic.
    """
    mono = np.asarray(mono, float)
    det = float(np.linalg.det(mono))
    if abs(det - 1.0) > _DET_TOL:
        raise InconsistentMonodromy(f"det = {det}, not within {_DET_TOL} of 1")
    eigs = np.linalg.eigvals(mono)
    eigs = sorted(eigs, key=lambda z: (z.real, z.imag))
    trace = float(np.trace(mono))
    if abs(trace) > 2.0 + _TRACE_TOL:
        label = "saddle"
    elif abs(trace) < 2.0 - _TRACE_TOL:
        label = "elliptic"
    else:
        label = "parabolic"
    return label, (complex(eigs[0]), complex(eigs[1]))


def _solve_step(DF: np.ndarray, F: np.ndarray, report: NewtonReport) -> np.ndarray:
    eigs = np.linalg.eigvals(DF)
    svals = np.linalg.svd(DF, compute_uv=False)
    if float(np.min(np.abs(eigs))) < 1e-10 or svals[-1] <= 1e-8 * max(svals[0], 1.0):
        report.failure_kind = "singular_jacobian"
        raise SingularJacobian(
            "shooting Jacobian is numerically singular (unit multiplier)", report
        )
    return np.linalg.solve(DF, -F)


def _loop_count(x: PlanarState, t0: float, sys: SystemSpec, duration: float,
                cfg: IntegratorConfig) -> int:
    """Clockwise loops of the closed trajectory around the origin."""
    angle = winding_angle(x, t0, sys, duration, cfg)
    return int(round(-angle / TWO_PI))


def newton_strobo(
    seed: PlanarState,
    t0: float,
    sys: SystemSpec,
    m: int,
    T: float,
    opts: NewtonOptions | None = None,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> tuple[PeriodicOrbitRecord, NewtonReport]:
    """Shoot for a fixed point of the m-th stroboscopic iterate at phase t0.

    Each iteration integrates the first variational system once over
    [t0, t0 + m T], giving the residual and its Jacobian together.  On
    convergence the same pass provides the monodromy matrix, and the
    loop count n is measured from the winding of the closed trajectory.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    opts = opts or NewtonOptions()
    rhs = make_variational_rhs2(sys)
    mT = m * T
    x = seed.as_array()
    seed_arr = x.copy()
    report = NewtonReport()

    for it in range(opts.max_iters + 1):
        y0 = np.array([x[0], x[1], 1.0, 0.0, 0.0, 1.0])
        res = integrate(rhs, y0, t0, t0 + mT, cfg)
        F = res.y[:2] - x
        r = float(np.linalg.norm(F))
        report.iterates.append((x.copy(), r))

        if r < opts.residual_tol:
            report.converged = True
            mono = res.y[2:6].reshape(2, 2).copy()
            stability, mults = classify(mono)
            point = PlanarState.from_array(x)
            n = _loop_count(point, t0, sys, mT, cfg)
            record = PeriodicOrbitRecord(
                x_eps=point, t0=t0, m=m, n=n, epsilon=sys.epsilon,
                monodromy=mono, multipliers=mults, stability=stability,
                residual=r, system=sys, T=T,
            )
            return record, report

        if float(np.linalg.norm(x - seed_arr)) > opts.divergence_radius:
            report.failure_kind = "diverged"
            raise Diverged(
                f"iterate left the trust region after {report.iteration_count} updates",
                report,
            )
        if it == opts.max_iters:
            break
        DF = res.y[2:6].reshape(2, 2) - np.eye(2)
        x = x + _solve_step(DF, F, report)

    report.failure_kind = "max_iters"
    raise MaxIters(f"no convergence within {opts.max_iters} iterations", report)


def _return_map_with_jacobian(v0, t_start, sys, rhs3, cfg):
    """One application of the section return map plus its 2x2 differential.

    Integrates the autonomized sensitivity from (0, v0) at clock t_start
    to the next crossing of {u = 0} taken in the departure direction.
    Returns (v*, t*, DP).
    """
    direction = 1 if v0 > 0 else -1
    y0 = np.concatenate([[0.0, v0, t_start], np.eye(3).ravel()])
    event = EventSpec(lambda y, t: y[0], direction=direction, target_count=1)
    _, y_star = find_event(rhs3, y0, 0.0, event, cfg)

    u_star, v_star, s_star = y_star[0], y_star[1], y_star[2]
    M = y_star[3:12].reshape(3, 3)
    if abs(v_star) < _TANGENT_TOL:
        return v_star, s_star, None
    accel = -math.sin(u_star)
    if sys.epsilon:
        accel += sys.epsilon * sys.forcing.value(s_star)

    # total derivatives of the crossing state; the return-time quotients
    # come from differentiating the crossing condition u(t*) = 0
    dt_dv0 = -M[0, 1] / v_star
    dt_dt0 = 1.0 - M[0, 2] / v_star
    DP = np.array(
        [
            [M[1, 1] + accel * dt_dv0, M[1, 2] + accel * (dt_dt0 - 1.0)],
            [dt_dv0, dt_dt0],
        ]
    )
    return v_star, s_star, DP


def newton_poincare(
    seed_v0: float,
    seed_t0: float,
    sys: SystemSpec,
    n: int,
    m: int,
    T: float,
    opts: NewtonOptions | None = None,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> tuple[PeriodicOrbitRecord, NewtonReport]:
    """Shoot on the vertical-axis return map with unknowns (v0, t0).

    The fixed-point condition is that after n returns the section speed
    repeats and the accumulated time equals m T.  The differential over
    n returns is chained one crossing at a time.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if seed_v0 == 0.0:
        raise ValueError("seed must leave the section, v0 != 0")
    opts = opts or NewtonOptions()
    rhs3 = make_variational_rhs3(sys)
    z = np.array([float(seed_v0), float(seed_t0)])
    z_seed = z.copy()
    report = NewtonReport()

    for it in range(opts.max_iters + 1):
        v, t_cur = z
        DPn = np.eye(2)
        for _ in range(n):
            if abs(v) < _TANGENT_TOL:
                report.failure_kind = "tangential_crossing"
                raise TangentialCrossing(
                    "return to the section is tangential; no transversal derivative",
                    report,
                )
            v, t_cur, DP = _return_map_with_jacobian(v, t_cur, sys, rhs3, cfg)
            if DP is None:
                report.failure_kind = "tangential_crossing"
                raise TangentialCrossing(
                    "return to the section is tangential; no transversal derivative",
                    report,
                )
            DPn = DP @ DPn

        F = np.array([v - z[0], t_cur - (z[1] + m * T)])
        r = float(np.linalg.norm(F))
        report.iterates.append((z.copy(), r))

        if r < opts.residual_tol:
            report.converged = True
            point = PlanarState(0.0, z[0])
            mono = flow_monodromy(point, z[1], sys, m * T, cfg)
            stability, mults = classify(mono)
            record = PeriodicOrbitRecord(
                x_eps=point, t0=float(z[1]), m=m, n=n, epsilon=sys.epsilon,
                monodromy=mono, multipliers=mults, stability=stability,
                residual=r, system=sys, T=T,
            )
            return record, report

        if float(np.linalg.norm(z - z_seed)) > opts.divergence_radius:
            report.failure_kind = "diverged"
            raise Diverged(
                f"iterate left the trust region after {report.iteration_count} updates",
                report,
            )
        if it == opts.max_iters:
            break
        DF = DPn - np.eye(2)
        z = z + _solve_step(DF, F, report)

    report.failure_kind = "max_iters"
    raise MaxIters(f"no convergence within {opts.max_iters} iterations", report)


@dataclass(frozen=True)
class StepPolicy:
    """Adaptive step sizes for natural-parameter continuation in eps."""

    initial: float = 0.01
    min_step: float = 1e-5
    max_step: float = 0.25
    grow: float = 1.5
    shrink: float = 0.5
    easy_iters: int = 5


def continue_in_epsilon(
    record: PeriodicOrbitRecord,
    eps_target: float,
    step_policy: StepPolicy | None = None,
    opts: NewtonOptions | None = None,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> list[PeriodicOrbitRecord]:
    """March the orbit of ``record`` in eps toward ``eps_target``.

    Each accepted point reseeds the stroboscopic solver at the same
    phase t0.  The step halves on a failed solve, grows after an easy
    one, and the march aborts with :class:`StepTooSmall` (carrying the
    accepted records) once it falls below the policy minimum.
    """
    policy = step_policy or StepPolicy()
    eps = record.epsilon
    sense = 1.0 if eps_target >= eps else -1.0
    seed = record.x_eps
    accepted: list[PeriodicOrbitRecord] = []
    step = policy.initial

    while sense * (eps_target - eps) > 0.0:
        trial = eps + sense * min(step, abs(eps_target - eps))
        sys_trial = replace(record.system, epsilon=trial)
        try:
            rec, rep = newton_strobo(seed, record.t0, sys_trial, record.m, record.T, opts, cfg)
        except NewtonFailure:
            step *= policy.shrink
            if step < policy.min_step:
                raise StepTooSmall(
                    f"continuation stalled at eps = {eps}", records=accepted, last_eps=eps
                )
            continue
        accepted.append(rec)
        eps = trial
        seed = rec.x_eps
        if rep.iteration_count <= policy.easy_iters:
            step = min(step * policy.grow, policy.max_step)
    return accepted


def orbit_cycle(
    record: PeriodicOrbitRecord, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> list[PlanarState]:
    """The m points of the map cycle through the record's fixed point."""
    points = [record.x_eps]
    for _ in range(record.m - 1):
        points.append(strobo(points[-1], record.t0, record.system, record.T, cfg))
    return points


def deduplicate_records(
    records: list[PeriodicOrbitRecord],
    tol: float = 1e-6,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> list[PeriodicOrbitRecord]:
    """Drop records whose orbits are map-iterate shifts of an earlier one.

    Two records describe the same orbit when their phases agree modulo
    the forcing period and one fixed point lies on the other's cycle.
    The first record of each orbit is kept, in input order.
    """
    kept: list[PeriodicOrbitRecord] = []
    cycles: list[list[PlanarState]] = []
    for rec in records:
        duplicate = False
        for prev, cycle in zip(kept, cycles):
            if rec.m != prev.m or rec.epsilon != prev.epsilon:
                continue
            phase_gap = (rec.t0 - prev.t0) % prev.T
            if min(phase_gap, prev.T - phase_gap) > 1e-6 * prev.T:
                continue
            gaps = [
                math.hypot(p.u - rec.x_eps.u, p.v - rec.x_eps.v) for p in cycle
            ]
            if min(gaps) < tol:
                duplicate = True
                break
        if not duplicate:
            kept.append(rec)
            cycles.append(orbit_cycle(rec, cfg))
    return kept
