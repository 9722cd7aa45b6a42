"""Exception hierarchy shared by every module."""


class FlatsrError(Exception):
    """Base class for all errors raised by flatsr."""


class InputError(FlatsrError, ValueError):
    """Malformed input: bad table entry, syntax error, empty generator set."""


class PreconditionError(FlatsrError):
    """An operation was called on an algebra that does not meet its requirements.

    ``witness`` carries the offending elements when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceError(FlatsrError):
    """A configured search or enumeration bound would be exceeded."""

    def __init__(self, message, required=None, bound=None):
        super().__init__(message)
        self.required = required
        self.bound = bound


class UnsupportedInputError(FlatsrError):
    """The input is valid but no decision procedure applies to it."""
