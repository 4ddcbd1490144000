"""Exception hierarchy shared by every module.

The CLI maps each class to a fixed exit code, so callers can tell a malformed
file from a failed certificate without parsing messages.
"""


class OverlapError(Exception):
    """Base class for all package errors."""


class ParseError(OverlapError, ValueError):
    """A text file (edge list, rotation system, representation) is malformed."""


class PreconditionError(OverlapError, ValueError):
    """An operation was applied to an input outside its stated domain."""


class VerificationError(OverlapError):
    """A constructed or supplied representation failed verification."""


class BudgetExceeded(OverlapError):
    """An exhaustive search hit its node budget before finishing."""
