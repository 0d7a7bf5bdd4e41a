"""Exception hierarchy.

Every numerical failure is a typed exception so that integration and
grid code can route around singular sets instead of propagating NaNs.
"""


class SplitPlaneError(ArithmeticError):
    """Base class for all library errors."""


class NonFiniteError(SplitPlaneError):
    """A component would be NaN or infinite."""


class DoubleOverflowError(NonFiniteError, OverflowError):
    pass


class ZeroDivisorError(SplitPlaneError, ZeroDivisionError):
    """Division by an element of the cone of zero (|t| == |x|)."""


class DomainError(SplitPlaneError, ValueError):
    pass


class PoleError(DomainError):
    pass


class BranchError(DomainError):
    pass


class NotRepresentableError(DomainError):
    """No hyperbolic polar chart covers the point (cone or origin)."""


class ConeError(DomainError):
    """A point falls on a cone where the operation is undefined."""


class DegenerateError(DomainError):
    """Homographic coefficients with ad - bc zero or a zero divisor."""


class BrokenConformalityError(DomainError):
    """The conformal factor vanishes at the query point."""


class MixedSectorError(DomainError):
    """Hyperbolic angle requested between vectors in different sector classes."""


class OpenContourError(DomainError):
    pass


class ExpressionSyntaxError(SplitPlaneError, SyntaxError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.msg = f"{message} at offset {offset}"
        self.offset = offset

    def __str__(self):
        return self.msg


class UnknownFunctionError(SplitPlaneError, NameError):
    def __init__(self, name, offset=None):
        where = "" if offset is None else f" at offset {offset}"
        super().__init__(f"unknown function {name!r}{where}")
        self.name = name
        self.offset = offset
