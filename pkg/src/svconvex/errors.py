"""Exception types shared across the package."""


class SvconvexError(Exception):
    """Base class."""


class TheoremViolation(SvconvexError):
    """Two routes that must agree did not; indicates a kernel bug."""


class PremiseViolation(SvconvexError):
    """A hypothesis of a check fails; carries a witness when one is known."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(SvconvexError):
    """Malformed input, with a machine-readable code and JSON pointer."""

    def __init__(self, code, message, pointer=""):
        super().__init__(f"{code} at {pointer or '/'}: {message}")
        self.code = code
        self.pointer = pointer
        self.detail = message
