"""Exception hierarchy shared by every module."""


class TropmodError(Exception):
    """Base class for all errors raised by tropmod."""


class PreconditionError(TropmodError, ValueError):
    """An input violates the documented precondition of an operation."""


class ParseError(TropmodError, ValueError):
    """Malformed JSON input."""


class NotHoneycombError(PreconditionError):
    """The polygon has an edge direction outside the honeycomb families."""


class NotRegularError(TropmodError):
    """Heights do not lie in the open secondary cone of a triangulation."""


class FormulaMismatchError(TropmodError, AssertionError):
    """The combinatorial formula and the rank oracle disagree.

    This always indicates a bug and is never swallowed.
    """


class NonmaximalHyperellipticError(PreconditionError):
    """Dimension counts for nonmaximal hyperelliptic polygons are not available."""
