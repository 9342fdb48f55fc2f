"""
Exception hierarchy shared by the library and the CLI.

Every class carries the process exit code the CLI maps it to.
"""

from typing import Optional


class ChwError(Exception):
    """Base class for all classifier errors"""

    exit_code = 1


class UsageFailure(ChwError):
    """Request that cannot be served (bad dimension, infeasible run, bad --w)"""

    exit_code = 1


class ValidationFailure(ChwError):
    """Input data that fails validation"""

    exit_code = 2


class PairParseError(ValidationFailure):
    """Pair file that is not valid JSON or carries malformed tokens"""


class DimensionMismatch(ValidationFailure):
    """Pair file whose parts disagree on n"""


class InvariantViolation(ValidationFailure):
    """Input that parses but violates a structural invariant"""

    def __init__(self, invariant: str, detail: Optional[str] = None):
        self.invariant = invariant
        self.detail = detail
        message = invariant if not detail else f"{invariant} ({detail})"
        super().__init__(message)


class OperationRejected(ValidationFailure):
    """Equivalence operation called with illegal arguments"""


class InvariantBreach(ChwError):
    """Internal consistency check failed"""

    exit_code = 3
