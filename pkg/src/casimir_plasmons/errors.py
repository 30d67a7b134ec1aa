"""Exception hierarchy shared by all modules of the package.

Every failure mode that callers are expected to handle gets its own type, so
that numerical trouble (which deserves a retry with different tolerances) is
distinguishable from contract violations (which indicate a bug in the caller
or in the model assumptions).
"""


class CasimirModelError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CasimirModelError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceFailure(CasimirModelError):
    """An iterative routine exhausted its budget without meeting tolerance."""


class NonFiniteIntegrand(CasimirModelError):
    """An integrand returned NaN/inf (or an impossible sign) at a node."""


class TailBoundViolated(CasimirModelError):
    """Samples beyond the tail threshold do not decay as required."""


class InvalidBracket(CasimirModelError, ValueError):
    """A root bracket has the same sign of the function at both ends."""


class BracketNotFound(CasimirModelError):
    """A monotonicity scan failed to bracket a root that should exist."""


class ContinuationError(CasimirModelError):
    """The real-arithmetic continuation left its principal window."""


class ExtrapolationUnstable(CasimirModelError):
    """A regulator-removal ladder did not contract toward a limit."""


class DegenerateFit(CasimirModelError, ValueError):
    """A least-squares fit has no unique solution (e.g. identical abscissae)."""


class NoSolution(CasimirModelError):
    """A mode equation has no solution for the requested parameters."""
