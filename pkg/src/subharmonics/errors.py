"""Exception hierarchy shared by all modules.

Everything numerical derives from :class:`SubharmonicsError` so callers
(and the CLI) can distinguish "the computation failed" from ordinary
programming errors.  Newton failures carry the iterate log that was
accumulated up to the failure, which is what makes diverging runs
plottable and reproducible.
"""

from __future__ import annotations


class SubharmonicsError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SubharmonicsError):
    """Invalid run configuration (CLI or config file)."""


class OutOfRange(SubharmonicsError):
    """Input outside the admissible domain (energy level, section speed, ...)."""


class Unattainable(SubharmonicsError):
    """Requested orbit period below the minimal period of the librational family."""


class NoConvergence(SubharmonicsError):
    """A scalar root search failed to bracket or converge."""


class IntegrationError(SubharmonicsError):
    """Base class for integrator failures."""


class StepLimitExceeded(IntegrationError):
    """The step budget was exhausted before reaching the end time."""


class StepUnderflow(IntegrationError):
    """The step size collapsed below representable progress in time."""


class EventNotFound(IntegrationError):
    """The requested section crossing never occurred within the step budget."""


class SpecMismatch(SubharmonicsError):
    """Data inconsistent with the resonance it claims to belong to."""


class NoSimpleZeros(SubharmonicsError):
    """A forcing profile has no simple zeros, so no seed can be extracted.

    This is the degenerate case in which first-order analysis can neither
    prove nor rule out persistence of the resonant orbit.
    """


class InconsistentMonodromy(SubharmonicsError):
    """A matrix claimed to be a monodromy matrix has determinant far from 1."""


class NewtonFailure(SubharmonicsError):
    """Base class for shooting failures; carries the partial iterate log."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Diverged(NewtonFailure):
    """An iterate left the trust region around the seed."""


class SingularJacobian(NewtonFailure):
    """The shooting Jacobian is numerically singular (unit multiplier)."""


class MaxIters(NewtonFailure):
    """Iteration budget exhausted without meeting the residual tolerance."""


class TangentialCrossing(NewtonFailure):
    """The return to the section is tangential, so its time derivative vanishes."""


class StepTooSmall(SubharmonicsError):
    """Parameter continuation stalled; carries the records accepted so far."""

    def __init__(self, message, records=(), last_eps=None):
        super().__init__(message)
        self.records = list(records)
        self.last_eps = last_eps
