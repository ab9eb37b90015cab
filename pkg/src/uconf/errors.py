"""Error types shared across the algebra, the parser and the CLI.

Every error raised while elaborating expression text carries a byte
offset into the source string in ``position`` (``None`` for errors
raised directly from library calls).
"""


class AlgebraError(Exception):
    """Base class for structural errors in the bundle algebra."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ConfigMismatch(AlgebraError):
    """Fibrewise operation applied across two different configurations."""


class OverlappingConfigurations(AlgebraError):
    """Disjoint-union operation applied to configurations sharing a point."""


class SamePoint(AlgebraError):
    """Kernel evaluated on two generators sitting at the same point."""


class UnknownPoint(AlgebraError):
    """A point label that does not belong to the base space."""


class BasisOutOfRange(AlgebraError):
    """A fibre basis index at or beyond the rank at its point."""


class ExprSyntaxError(AlgebraError):
    """Malformed expression text.

    ``expected`` lists the token kinds that would have been legal at
    ``position``.
    """

    def __init__(self, message, position, expected=()):
        super().__init__(message, position)
        self.expected = tuple(expected)
