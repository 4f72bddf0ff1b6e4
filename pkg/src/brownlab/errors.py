"""Exception hierarchy shared by the library and the CLI."""


class BrownlabError(Exception):
    """Base class for all errors raised by brownlab."""


class ParseError(BrownlabError, ValueError):
    """Malformed permutation text or group specification."""


class OrderCapExceeded(BrownlabError):
    """A group enumeration went past the configured order cap."""


class InvariantViolation(BrownlabError):
    """An internal consistency check failed.

    ``witness`` carries whatever data pins down the failure (a pair of
    elements, a triple, a simplex ...) so that it can be reported.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
