"""Exception types shared across the package.

Each class carries the process exit code the CLI maps it to, so the
command-line front end can translate failures uniformly.
"""


class MertensError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(MertensError, ValueError):
    """An argument lies outside an operation's mathematical domain."""

    exit_code = 2


class ParameterError(MertensError, ValueError):
    """Parameters are structurally valid but unusable (e.g. a contour
    truncated too early for the requested accuracy, or a prime table
    that does not cover the evaluation point)."""

    exit_code = 2

    def __init__(self, message: str, suggestion=None):
        super().__init__(message)
        self.suggestion = suggestion


class PrecisionNotMetError(MertensError):
    """The requested accuracy cannot be certified; ``achieved_bound``
    holds the absolute error bound that *was* certified."""

    exit_code = 3

    def __init__(self, message: str, achieved_bound=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound


class ConvergenceError(PrecisionNotMetError):
    """Iterative refinement failed to settle within its round budget."""


class CapacityError(MertensError):
    """The request exceeds a configured work or memory ceiling."""

    exit_code = 4
