"""Exception hierarchy shared by every solver module.

Validation problems derive from :class:`ValueError`; resource and numerical
failures derive from :class:`RuntimeError`.  The CLI maps the two families to
distinct exit codes.
"""


class CentdianError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CentdianError, ValueError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class NegativeWeight(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class InvalidInstance(ValidationError):
    pass


class InvalidParams(ValidationError):
    pass


class InvalidKappa(ValidationError):
    pass


class InvalidFractional(ValidationError):
    pass


class MalformedModel(ValidationError):
    pass


class UncoverableElement(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class InstanceTooLarge(CentdianError, RuntimeError):
    pass


class NumericalFailure(CentdianError, RuntimeError):
    pass
