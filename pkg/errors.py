"""
Exception hierarchy shared by the algebra modules, the CLI and the HTTP API.
"""


class DiffRestError(Exception):
    """Base class for every error raised by this package."""


class RingMismatchError(DiffRestError):
    def __init__(self, left, right):
        super().__init__(f"ring mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class ArityError(DiffRestError):
    """Variable index, tuple length or object arity does not fit."""


class DivisionError(DiffRestError):
    """Division by the zero polynomial."""


class NonExactDivisionError(DiffRestError):
    pass


class EqualityUndecidedError(DiffRestError):
    def __init__(self, detail=""):
        message = "equality undecided"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class UnsupportedRigError(DiffRestError):
    pass


class MissingStarError(DiffRestError):
    """The base rig has no star operation, so nu is not available."""


class InvalidRestrictionSetError(DiffRestError):
    def __init__(self, denominator, detail=""):
        message = f"invalid restriction set: denominator {denominator} is not in the closure of the generators"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.denominator = denominator


class IncompatibleError(DiffRestError):
    """Maps that must be compatible (or ordered) are not."""


class MissingCapabilityError(DiffRestError):
    def __init__(self, model_name, capability, suite=None):
        if suite:
            message = f"suite unsupported: {suite} needs '{capability}' which model {model_name} does not provide"
        else:
            message = f"model {model_name} does not provide '{capability}'"
        super().__init__(message)
        self.capability = capability
        self.suite = suite


class NotIdempotentError(DiffRestError):
    pass


class EnumerationBoundError(DiffRestError):
    pass


class InvariantViolation(DiffRestError):
    """An internal invariant failed; this always indicates a bug."""


class ParseError(DiffRestError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
