"""Exception hierarchy shared by the whole package."""


class GermError(Exception):
    """Base class for all library errors."""


class OrderExhaustedError(GermError):
    """A jet was differentiated (or evaluated) past its truncation order.

    Silent truncation here would turn "unknown" into "zero", which is the
    one failure mode the order bookkeeping exists to prevent.
    """


class PreconditionError(GermError):
    """An operation was called on input outside its stated domain."""


class ParseError(GermError):
    """Syntax or validation error in a polynomial or document source."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s at position %d" % (message, position)
        super().__init__(message)
        self.position = position
