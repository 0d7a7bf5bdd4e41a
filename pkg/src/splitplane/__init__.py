"""Functions of a double variable ``h = t + jx`` with ``j**2 == 1``."""

__version__ = "0.1.0"

from .algebra import (
    J,
    ONE,
    ZERO,
    DoubleNumber,
    NullPair,
    PolarForm,
    Region,
    SignFactor,
    classify,
    conjugate,
    format_double,
    from_polar,
    inv,
    is_zero_divisor,
    mul,
    norm_sq,
    null_join,
    null_split,
    parse_double,
    rotate_quarter,
    to_polar,
)
from .elementary import BUILTINS, apply_componentwise
from .errors import (
    BranchError,
    BrokenConformalityError,
    ConeError,
    DegenerateError,
    DomainError,
    DoubleOverflowError,
    ExpressionSyntaxError,
    MixedSectorError,
    NonFiniteError,
    NotRepresentableError,
    OpenContourError,
    PoleError,
    SplitPlaneError,
    UnknownFunctionError,
    ZeroDivisorError,
)
from .expr import builtin, compose, conj, const, field_components, h
from .parser import parse_expression
