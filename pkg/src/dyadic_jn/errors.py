"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class JNError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class ValidationError(JNError, ValueError):
    kind = "validation"


class PreconditionError(ValidationError):
    """An operation's mathematical hypothesis is not met (e.g. λ below the root median)."""

    kind = "precondition"


class ResourceError(JNError):
    kind = "resource"


class UnsupportedError(JNError):
    kind = "unsupported"
