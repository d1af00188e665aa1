"""Exception hierarchy shared by the solver modules and the CLI."""


class EntropolyError(Exception):
    """Base class for all package errors."""


class LimitExceeded(EntropolyError):
    """A vertex or assignment budget was exhausted before the search finished.

    ``partial`` carries whatever was collected before the budget ran out.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DenominatorOverflow(EntropolyError):
    """The common denominator exceeds the pseudo-polynomial DP budget."""


class TargetExceedsTotal(EntropolyError):
    """Subset-sum target larger than the sum of all weights."""


class MalformedInstance(EntropolyError, ValueError):
    """An integer problem instance violates its structural constraints."""


class ParseError(EntropolyError):
    """Input is not well-formed JSON."""


class SchemaError(EntropolyError):
    """Input JSON has missing, unknown or mistyped fields."""
