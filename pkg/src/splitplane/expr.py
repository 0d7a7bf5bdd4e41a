"""Expression trees for functions of one double variable ``h``.

Trees are immutable and can be built in Python or parsed from text
(:mod:`splitplane.parser`).  Python operators on nodes build new nodes,
and calling a node on another node composes them::

    F = builtin("exp")(h * h) + conj(h)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .algebra import DoubleNumber, as_double, conjugate, inv, mul
from .elementary import BUILTINS, pow_int, pow_real
from .errors import DomainError, UnknownFunctionError

# binding strength used by the printer
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


class Expr:
    """Base class for expression nodes."""

    prec = _PREC["atom"]

    def evaluate(self, h: DoubleNumber) -> DoubleNumber:
        raise NotImplementedError

    def substitute(self, inner: "Expr") -> "Expr":
        raise NotImplementedError

    def to_source(self) -> str:
        raise NotImplementedError

    def __call__(self, arg):
        if isinstance(arg, Expr):
            return self.substitute(arg)
        return self.evaluate(as_double(arg))

    def __str__(self):
        return self.to_source()

    def __add__(self, o):
        return BinOp("+", self, _lift(o))

    def __radd__(self, o):
        return BinOp("+", _lift(o), self)

    def __sub__(self, o):
        return BinOp("-", self, _lift(o))

    def __rsub__(self, o):
        return BinOp("-", _lift(o), self)

    def __mul__(self, o):
        return BinOp("*", self, _lift(o))

    def __rmul__(self, o):
        return BinOp("*", _lift(o), self)

    def __truediv__(self, o):
        return BinOp("/", self, _lift(o))

    def __rtruediv__(self, o):
        return BinOp("/", _lift(o), self)

    def __pow__(self, o):
        return BinOp("^", self, _lift(o))

    def __neg__(self):
        return Neg(self)


def _lift(v) -> Expr:
    return v if isinstance(v, Expr) else Const(as_double(v))


def _fmt_real(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, h):
        return h

    def substitute(self, inner):
        return inner

    def to_source(self):
        return "h"


@dataclass(frozen=True)
class Const(Expr):
    value: DoubleNumber

    def __post_init__(self):
        object.__setattr__(self, "value", as_double(self.value))

    @property
    def prec(self):
        t, x = self.value.t, self.value.x
        if x == 0 and t >= 0 or t == 0 and x >= 0:
            return _PREC["atom"]
        return _PREC["+"]

    def evaluate(self, h):
        return self.value

    def substitute(self, inner):
        return self

    def to_source(self):
        t, x = self.value.t, self.value.x
        if x == 0:
            return _fmt_real(t)
        if t == 0:
            return "j" if x == 1 else _fmt_real(x) + "j"
        return f"{_fmt_real(t)}{'+' if x > 0 else '-'}{_fmt_real(abs(x))}j"


@dataclass(frozen=True)
class Apply(Expr):
    name: str
    arg: Expr
    params: tuple = ()

    def __post_init__(self):
        if self.name not in BUILTINS:
            raise UnknownFunctionError(self.name)
        lo, hi = BUILTINS[self.name].n_params
        if not lo <= len(self.params) <= hi:
            raise ValueError(f"{self.name} takes {lo}..{hi} parameters, got {len(self.params)}")

    def evaluate(self, h):
        return BUILTINS[self.name](self.arg.evaluate(h), *self.params)

    def substitute(self, inner):
        return Apply(self.name, self.arg.substitute(inner), self.params)

    def to_source(self):
        args = [self.arg.to_source()] + [_fmt_real(p) if isinstance(p, float) else str(p) for p in self.params]
        return f"{self.name}({', '.join(args)})"


@dataclass(frozen=True)
class Conj(Expr):
    arg: Expr

    def evaluate(self, h):
        return conjugate(self.arg.evaluate(h))

    def substitute(self, inner):
        return Conj(self.arg.substitute(inner))

    def to_source(self):
        return f"conj({self.arg.to_source()})"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    prec = _PREC["neg"]

    def evaluate(self, h):
        return -self.arg.evaluate(h)

    def substitute(self, inner):
        return Neg(self.arg.substitute(inner))

    def to_source(self):
        return "-" + _wrap(self.arg, _PREC["neg"])


def _power(base: DoubleNumber, e: DoubleNumber) -> DoubleNumber:
    if e.x != 0:
        raise DomainError(f"exponent must be real, got {e}")
    if e.t.is_integer():
        return pow_int(base, int(e.t))
    return pow_real(base, e.t)


_OPS: dict[str, Callable[[DoubleNumber, DoubleNumber], DoubleNumber]] = {
    "+": lambda u, v: u + v,
    "-": lambda u, v: u - v,
    "*": mul,
    "/": lambda u, v: mul(u, inv(v)),
    "^": _power,
}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown operator {self.op!r}")

    @property
    def prec(self):
        return _PREC[self.op]

    def evaluate(self, h):
        return _OPS[self.op](self.left.evaluate(h), self.right.evaluate(h))

    def substitute(self, inner):
        return BinOp(self.op, self.left.substitute(inner), self.right.substitute(inner))

    def to_source(self):
        p = _PREC[self.op]
        if self.op == "^":
            # right associative; exponent may carry a unary minus
            return f"{_wrap(self.left, p + 1)}^{_wrap(self.right, _PREC['neg'])}"
        sep = f" {self.op} " if p == 1 else self.op
        return f"{_wrap(self.left, p)}{sep}{_wrap(self.right, p + 1)}"


def _wrap(e: Expr, min_prec: int) -> str:
    s = e.to_source()
    return s if e.prec >= min_prec else f"({s})"


# -- convenience constructors -------------------------------------------------

h = Var()


def const(v) -> Const:
    return Const(as_double(v))


def builtin(name: str, *params) -> Apply:
    """The builtin applied to ``h``; call the result on another node to compose."""
    return Apply(name, Var(), tuple(params))


def conj(e: Expr) -> Conj:
    return Conj(e)


def compose(outer: Expr, inner: Expr) -> Expr:
    return outer.substitute(inner)


@dataclass(frozen=True)
class FieldComponents:
    """Real components ``U(t, x)`` and ``V(t, x)`` of ``F = U + jV``."""

    U: Callable[[float, float], float]
    V: Callable[[float, float], float]


def as_function(F) -> Callable[[DoubleNumber], DoubleNumber]:
    if isinstance(F, Expr):
        return F.evaluate
    return F


def field_components(F) -> FieldComponents:
    f = as_function(F)
    return FieldComponents(
        lambda t, x: f(DoubleNumber(t, x)).t,
        lambda t, x: f(DoubleNumber(t, x)).x,
    )


PI = Const(DoubleNumber(math.pi))
