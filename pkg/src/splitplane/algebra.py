"""Double (split-complex) numbers ``t + jx`` with ``j**2 == 1``.

Three coordinate systems are supported:

* Cartesian ``(t, x)``, the storage format of :class:`DoubleNumber`;
* hyperbolic polar ``(epsilon, rho, psi)`` inside each of the four
  quadrants cut out by the cone ``|t| == |x|``;
* the null (isotropic) basis ``(a, b) = (t + x, t - x)``, in which the
  algebra is the componentwise product of two copies of the reals.
"""

from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NonFiniteError, NotRepresentableError, ZeroDivisorError

Real = Union[int, float]


@dataclass(frozen=True)
class DoubleNumber:
    t: float
    x: float = 0.0

    def __post_init__(self):
        t, x = float(self.t), float(self.x)
        if not (math.isfinite(t) and math.isfinite(x)):
            raise NonFiniteError(f"non-finite component in ({self.t}, {self.x})")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "DoubleNumber | None":
        if isinstance(other, DoubleNumber):
            return other
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return DoubleNumber(other, 0.0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DoubleNumber(self.t + o.t, self.x + o.x)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DoubleNumber(self.t - o.t, self.x - o.x)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return DoubleNumber(-self.t, -self.x)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(self, inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return mul(o, inv(self))

    def __pow__(self, exponent):
        # imported lazily: elementary depends on this module
        from .elementary import pow_int, pow_real

        if isinstance(exponent, int) and not isinstance(exponent, bool):
            return pow_int(self, exponent)
        if isinstance(exponent, float):
            return pow_real(self, exponent)
        return NotImplemented

    def conjugate(self) -> "DoubleNumber":
        return DoubleNumber(self.t, -self.x)

    @property
    def real(self) -> float:
        return self.t

    @property
    def imag(self) -> float:
        return self.x

    # -- text and JSON ----------------------------------------------------

    def __str__(self):
        return format_double(self)

    def to_json(self) -> dict:
        return {"t": self.t, "x": self.x}

    @classmethod
    def parse(cls, src: "str | dict") -> "DoubleNumber":
        return parse_double(src)


J = DoubleNumber(0.0, 1.0)
ONE = DoubleNumber(1.0, 0.0)
ZERO = DoubleNumber(0.0, 0.0)


def as_double(value) -> DoubleNumber:
    """Embed reals as ``x = 0``; pass DoubleNumber through unchanged."""
    if isinstance(value, DoubleNumber):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)) and not isinstance(value, bool):
        return DoubleNumber(float(value), 0.0)
    raise TypeError(f"cannot interpret {value!r} as a double number")


def mul(h1: DoubleNumber, h2: DoubleNumber) -> DoubleNumber:
    return DoubleNumber(h1.t * h2.t + h1.x * h2.x, h1.t * h2.x + h1.x * h2.t)


def conjugate(h: DoubleNumber) -> DoubleNumber:
    return DoubleNumber(h.t, -h.x)


def norm_sq(h: DoubleNumber) -> float:
    """Signed squared norm ``h * conj(h) = t**2 - x**2``, computed as ``a*b``."""
    return (h.t + h.x) * (h.t - h.x)


def modulus(h: DoubleNumber) -> float:
    return math.sqrt(abs(norm_sq(h)))


def is_zero_divisor(h: DoubleNumber) -> bool:
    """True on the cone of zero, including the origin."""
    return abs(h.t) == abs(h.x)


def inv(h: DoubleNumber) -> DoubleNumber:
    if abs(h.t) == abs(h.x):
        raise ZeroDivisorError(f"{h} lies on the cone of zero")
    n = norm_sq(h)
    return DoubleNumber(h.t / n, -h.x / n)


def is_near_cone(h: DoubleNumber, tol: float) -> bool:
    """Tolerance-band version of :func:`is_zero_divisor`, relative to ``max(1, |t|, |x|)``."""
    scale = max(1.0, abs(h.t), abs(h.x))
    return min(abs(h.t + h.x), abs(h.t - h.x)) <= tol * scale


# -- null basis --------------------------------------------------------------


@dataclass(frozen=True)
class NullPair:
    a: float
    b: float

    def __mul__(self, other: "NullPair") -> "NullPair":
        return NullPair(self.a * other.a, self.b * other.b)

    def __add__(self, other: "NullPair") -> "NullPair":
        return NullPair(self.a + other.a, self.b + other.b)


def null_split(h: DoubleNumber) -> NullPair:
    return NullPair(h.t + h.x, h.t - h.x)


def null_join(p: NullPair) -> DoubleNumber:
    return DoubleNumber((p.a + p.b) / 2, (p.a - p.b) / 2)


# -- regions -----------------------------------------------------------------


class Region(enum.Enum):
    QUADRANT_I = "QuadrantI"
    QUADRANT_II = "QuadrantII"
    QUADRANT_III = "QuadrantIII"
    QUADRANT_IV = "QuadrantIV"
    CONE_PLUS_UP = "ConePlusUp"
    CONE_PLUS_DOWN = "ConePlusDown"
    CONE_MINUS_UP = "ConeMinusUp"
    CONE_MINUS_DOWN = "ConeMinusDown"
    ORIGIN = "Origin"

    @property
    def is_quadrant(self) -> bool:
        return self in _QUADRANTS

    @property
    def is_cone(self) -> bool:
        return not self.is_quadrant and self is not Region.ORIGIN


_QUADRANTS = (Region.QUADRANT_I, Region.QUADRANT_II, Region.QUADRANT_III, Region.QUADRANT_IV)
# index order used by classify_arrays
REGION_ORDER = tuple(Region)


def classify(h: DoubleNumber) -> Region:
    t, x = h.t, h.x
    if t > abs(x):
        return Region.QUADRANT_I
    if x > abs(t):
        return Region.QUADRANT_II
    if -t > abs(x):
        return Region.QUADRANT_III
    if -x > abs(t):
        return Region.QUADRANT_IV
    if t == 0.0 and x == 0.0:
        return Region.ORIGIN
    # |t| == |x| != 0.  Con+ is the line t == x, Con- is t == -x; in both
    # cases the up branch is the one with t > 0.
    if t == x:
        return Region.CONE_PLUS_UP if t > 0 else Region.CONE_PLUS_DOWN
    return Region.CONE_MINUS_UP if t > 0 else Region.CONE_MINUS_DOWN


def classify_arrays(t: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`classify`; returns indices into :data:`REGION_ORDER`."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    conds = [
        t > np.abs(x),
        x > np.abs(t),
        -t > np.abs(x),
        -x > np.abs(t),
        (t == x) & (t > 0),
        (t == x) & (t < 0),
        (t == -x) & (t > 0),
        (t == -x) & (t < 0),
        (t == 0) & (x == 0),
    ]
    return np.select(conds, list(range(len(conds))), default=-1)


# -- hyperbolic polar form ---------------------------------------------------


class SignFactor(enum.Enum):
    """The four sign factors ``1, j, -1, -j``; stored as (sign, carries j)."""

    ONE = (1, False)
    J = (1, True)
    MINUS_ONE = (-1, False)
    MINUS_J = (-1, True)

    def __mul__(self, other: "SignFactor") -> "SignFactor":
        sign = self.value[0] * other.value[0]
        has_j = self.value[1] != other.value[1]
        return SignFactor((sign, has_j))

    def __pow__(self, n: int) -> "SignFactor":
        sign = self.value[0] ** (n % 2)
        has_j = self.value[1] and n % 2 == 1
        return SignFactor((sign, has_j))

    def as_double(self) -> DoubleNumber:
        sign, has_j = self.value
        return DoubleNumber(0.0, float(sign)) if has_j else DoubleNumber(float(sign), 0.0)

    @property
    def region(self) -> Region:
        return _SIGN_REGION[self]


_SIGN_REGION = {
    SignFactor.ONE: Region.QUADRANT_I,
    SignFactor.J: Region.QUADRANT_II,
    SignFactor.MINUS_ONE: Region.QUADRANT_III,
    SignFactor.MINUS_J: Region.QUADRANT_IV,
}
_REGION_SIGN = {r: s for s, r in _SIGN_REGION.items()}


@dataclass(frozen=True)
class PolarForm:
    """``h = epsilon * rho * (cosh psi + j sinh psi)`` inside one quadrant.

    ``psi`` is not wrapped; each quadrant carries its own copy of the real line.
    """

    epsilon: SignFactor
    rho: float
    psi: float

    def __post_init__(self):
        if not isinstance(self.epsilon, SignFactor):
            raise TypeError("epsilon must be a SignFactor")
        if not (self.rho > 0 and math.isfinite(self.rho) and math.isfinite(self.psi)):
            raise NotRepresentableError(f"polar form needs finite rho > 0, got rho={self.rho}")

    @property
    def region(self) -> Region:
        return self.epsilon.region

    @property
    def log_angle(self) -> tuple[float, float]:
        """The complex hyperbolic angle ``ln rho + j psi`` as a pair."""
        return math.log(self.rho), self.psi


def to_polar(h: DoubleNumber) -> PolarForm:
    region = classify(h)
    if not region.is_quadrant:
        raise NotRepresentableError(f"{h} lies on {region.value}; no polar chart covers it")
    a, b = h.t + h.x, h.t - h.x
    # psi = artanh(x/t) in I/III and artanh(t/x) in II/IV; both equal
    # (1/2) ln|a/b|, which keeps full precision near the cone.
    psi = 0.5 * (math.log(abs(a)) - math.log(abs(b)))
    rho = math.sqrt(abs(a)) * math.sqrt(abs(b))
    return PolarForm(_REGION_SIGN[region], rho, psi)


def from_polar(p: PolarForm) -> DoubleNumber:
    c, s = p.rho * math.cosh(p.psi), p.rho * math.sinh(p.psi)
    return mul(p.epsilon.as_double(), DoubleNumber(c, s))


# -- rotations of the Cartesian plane ----------------------------------------


def rotate_quarter(h: DoubleNumber, k: int) -> DoubleNumber:
    """Euclidean rotation by ``k * pi/2`` about the origin (not an algebra map)."""
    k %= 4
    if k == 0:
        return h
    if k == 1:
        return DoubleNumber(-h.x, h.t)
    if k == 2:
        return DoubleNumber(-h.t, -h.x)
    return DoubleNumber(h.x, -h.t)


# -- text form ---------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^([+-]?{_NUM})$")
_RE_IMAG = re.compile(rf"^([+-]?(?:{_NUM})?)j$")
_RE_FULL = re.compile(rf"^([+-]?{_NUM})([+-](?:{_NUM})?)j$")


def _imag_coeff(s: str) -> float:
    if s in ("", "+"):
        return 1.0
    if s == "-":
        return -1.0
    return float(s)


def parse_double(src: "str | dict") -> DoubleNumber:
    """Parse ``"t+xj"`` text, a JSON object ``{"t": .., "x": ..}`` or its string form."""
    if isinstance(src, dict):
        return DoubleNumber(float(src["t"]), float(src.get("x", 0.0)))
    s = src.strip()
    if s.startswith("{"):
        return parse_double(json.loads(s))
    s = s.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _RE_REAL.match(s)
    if m:
        return DoubleNumber(float(m.group(1)), 0.0)
    m = _RE_IMAG.match(s)
    if m:
        return DoubleNumber(0.0, _imag_coeff(m.group(1)))
    m = _RE_FULL.match(s)
    if m:
        return DoubleNumber(float(m.group(1)), _imag_coeff(m.group(2)))
    raise ValueError(f"cannot parse double number from {src!r}")


def _fmt(v: float) -> str:
    r = repr(v)
    return r[:-2] if r.endswith(".0") else r


def format_double(h: DoubleNumber) -> str:
    sign = "-" if math.copysign(1.0, h.x) < 0 else "+"
    return f"{_fmt(h.t)}{sign}{_fmt(abs(h.x))}j"
