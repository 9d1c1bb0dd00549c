"""Exceptions shared across the package.

Class names double as stable error codes: the CLI prefixes messages with
them and the HTTP service returns them in the ``error`` field.
"""


class CurveLabError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class VariableMismatch(CurveLabError):
    """Operands disagree on variable names, or a name is not a variable
    of the polynomial at hand."""


class DegreeOfZero(CurveLabError):
    """The zero polynomial has no degree (or no tangent data)."""


class DegreeLimitExceeded(CurveLabError):
    """Total degree would exceed the configured bound."""


class ParseError(CurveLabError):
    """Syntax error in a polynomial expression.

    ``offset`` is the byte offset of the offending character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DegenerateTransform(CurveLabError):
    """The transform left only exceptional-line factors: the proper
    transform would be a nonzero constant."""


class NotOnCurve(CurveLabError):
    """The given point does not satisfy the curve equation."""


class NotFound(CurveLabError):
    """Unknown catalog slug (or session id, in the service)."""


class InvalidViewport(CurveLabError):
    """Viewport bounds are non-finite, empty or too coarse."""
