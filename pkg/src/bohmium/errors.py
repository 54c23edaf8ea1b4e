"""Exception types shared across the package."""


class BohmiumError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BohmiumError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OverflowGuard(BohmiumError, OverflowError):
    """An intermediate quantity left the representable floating-point range."""


class NodeProximity(BohmiumError):
    """The evaluation point is inside the singular neighbourhood of a node."""

    def __init__(self, x, y, t, density):
        super().__init__(f"probability density {density:.3e} below floor at "
                         f"({x:.6g}, {y:.6g}, t={t:.6g})")
        self.x, self.y, self.t, self.density = x, y, t, density


class StepFloorReached(BohmiumError):
    """The adaptive controller hit h_min with the error test still failing.

    The partial trajectory accumulated so far is attached as ``trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class MaxStepsExceeded(BohmiumError):
    """Integration exceeded the configured step budget."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class NodalDegeneracy(BohmiumError):
    """Nodal-point denominator within margin of zero (nodes at infinity)."""


class NoConvergence(BohmiumError):
    """Every Newton seed failed to converge."""


class OnlyNodeRoot(BohmiumError):
    """Every Newton seed collapsed onto the nodal point itself."""


class NonUniformSampling(BohmiumError, ValueError):
    """Trajectory samples are not uniformly spaced."""


class IncompleteWindow(BohmiumError, ValueError):
    """Analysis window does not span an integer number of base periods."""


class InsufficientSpan(BohmiumError, ValueError):
    """Time series does not span enough decades for a log-log fit."""


class NoPeriodFound(BohmiumError):
    """No return period below tolerance inside the scanned window."""


class UnknownScenario(BohmiumError, KeyError):
    """Requested scenario name is not in the registry."""

    __str__ = BaseException.__str__   # not KeyError's repr-quoting


class ConfigParse(BohmiumError, ValueError):
    """A scenario configuration file could not be parsed."""
