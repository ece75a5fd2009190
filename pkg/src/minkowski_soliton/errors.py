"""Exception types raised by the solvers."""


class SolitonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SolitonError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class StepFailure(SolitonError):
    """The profile integrator produced a slope outside ``[0, 1)``."""


class NoConvergence(SolitonError):
    """Newton iteration failed to reach the residual tolerance."""


class SpacelikeViolation(SolitonError):
    """A discrete slope reached magnitude one."""


class CflViolation(SolitonError):
    """The explicit time step exceeds the parabolic stability bound."""


class OutOfRange(SolitonError, ValueError):
    """Evaluation requested beyond the horizon of a profile grid."""
