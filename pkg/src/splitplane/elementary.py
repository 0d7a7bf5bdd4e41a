"""Elementary h-holomorphic functions of a double variable.

Each function is evaluated from an explicit coordinate formula in
``(t, x)``.  Every builtin also registers a real profile ``f`` so that
:func:`apply_componentwise` can evaluate it independently through the
null basis: ``F(h) = null_join(f(t + x), f(t - x))``.  The two routes
are compared in the test-suite.

Where the classical coordinate formulas are wrong or branch-ambiguous,
the corrected form is used (see the notes on ``cosh``, ``coth``,
``arcsin``, ``arccos`` and ``arcosh``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import (
    ONE,
    DoubleNumber,
    NullPair,
    Region,
    SignFactor,
    PolarForm,
    as_double,
    classify,
    from_polar,
    inv,
    is_zero_divisor,
    mul,
    null_join,
    null_split,
    to_polar,
)
from .errors import (
    BranchError,
    ConeError,
    DegenerateError,
    DomainError,
    DoubleOverflowError,
    PoleError,
)

# largest |t| + |x| for which e**(|t| + |x|) is finite
_EXP_LIMIT = math.log(1.7976931348623157e308)
# denominators below this are treated as poles
_POLE_TOL = 64 * 2.220446049250313e-16


def _real_call(f: Callable[[float], float], r: float) -> float:
    try:
        v = f(r)
    except ZeroDivisionError as e:
        raise PoleError(f"pole of real profile at {r!r}") from e
    except (ValueError, OverflowError) as e:
        raise DomainError(f"{r!r} outside real profile domain: {e}") from e
    if isinstance(v, complex) or not math.isfinite(v):
        raise DomainError(f"{r!r} outside real profile domain")
    return v


def apply_componentwise(f, h: DoubleNumber) -> DoubleNumber:
    """Apply a real function on each null coordinate and join the results.

    ``f`` may also be a pair ``(f_a, f_b)`` when the two components need
    different real functions (homographic maps with double coefficients).
    """
    fa, fb = f if isinstance(f, tuple) else (f, f)
    p = null_split(h)
    return null_join(NullPair(_real_call(fa, p.a), _real_call(fb, p.b)))


# -- exponential and logarithm -------------------------------------------------


def exp(h: DoubleNumber) -> DoubleNumber:
    if abs(h.t) + abs(h.x) > _EXP_LIMIT:
        raise DoubleOverflowError(f"exp({h}) overflows")
    et = math.exp(h.t)
    return DoubleNumber(et * math.cosh(h.x), et * math.sinh(h.x))


def log(h: DoubleNumber) -> DoubleNumber:
    """``ln rho + j psi``; defined in quadrant I only."""
    if classify(h) is not Region.QUADRANT_I:
        raise DomainError(f"log is defined only in quadrant I, got {h} ({classify(h).value})")
    p = to_polar(h)
    return DoubleNumber(math.log(p.rho), p.psi)


# -- powers and roots ------------------------------------------------------------


def pow_int(h: DoubleNumber, n: int) -> DoubleNumber:
    if n < 0:
        h = inv(h)
        n = -n
    result, base = ONE, h
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def pow_real(h: DoubleNumber, alpha: float) -> DoubleNumber:
    """Real power on quadrant I, extended to the upper cone by ``(1±j)^a = 2^(a-1)(1±j)``."""
    region = classify(h)
    if region is Region.QUADRANT_I:
        p = to_polar(h)
        return from_polar(PolarForm(SignFactor.ONE, p.rho**alpha, alpha * p.psi))
    if region in (Region.CONE_PLUS_UP, Region.CONE_MINUS_UP):
        # h = s (1 +- j) with s = t > 0
        s = h.t
        c = 2.0 ** (alpha - 1) * s**alpha
        return DoubleNumber(c, c if region is Region.CONE_PLUS_UP else -c)
    raise DomainError(f"real power undefined at {h} ({region.value})")


_BRANCH_SIGNS = (SignFactor.ONE, SignFactor.J, SignFactor.MINUS_ONE, SignFactor.MINUS_J)


def root(h: DoubleNumber, n: int, branch: int = 0) -> DoubleNumber:
    """n-th root.  Even roots live on quadrant I and have four leaves, indexed by ``branch``."""
    if n < 2:
        raise ValueError("root order must be >= 2")
    region = classify(h)
    if not region.is_quadrant:
        raise DomainError(f"root undefined on {region.value}")
    p = to_polar(h)
    if n % 2 == 0:
        if region is not Region.QUADRANT_I:
            raise DomainError(f"even root needs quadrant I, got {region.value}")
        if branch not in range(4):
            raise BranchError(f"branch must be in 0..3, got {branch}")
        eps = _BRANCH_SIGNS[branch]
    else:
        if branch != 0:
            raise BranchError("odd roots are single-valued; branch must be 0")
        eps = p.epsilon
    return from_polar(PolarForm(eps, p.rho ** (1.0 / n), p.psi / n))


def sqrt(h: DoubleNumber) -> DoubleNumber:
    return root(h, 2, 0)


# -- circular functions ----------------------------------------------------------


def sin(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    return DoubleNumber(math.sin(t) * math.cos(x), math.sin(x) * math.cos(t))


def cos(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    return DoubleNumber(math.cos(t) * math.cos(x), -math.sin(t) * math.sin(x))


def tan(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    den = math.cos(2 * t) + math.cos(2 * x)
    if abs(den) < _POLE_TOL:
        raise PoleError(f"tan has a pole at {h}")
    return DoubleNumber(math.sin(2 * t) / den, math.sin(2 * x) / den)


def cot(h: DoubleNumber) -> DoubleNumber:
    # cot h = -tan(h - pi/2)
    t, x = h.t, h.x
    den = math.cos(2 * x) - math.cos(2 * t)
    if abs(den) < _POLE_TOL:
        raise PoleError(f"cot has a pole at {h}")
    return DoubleNumber(math.sin(2 * t) / den, -math.sin(2 * x) / den)


def trig(h: DoubleNumber, kind: str) -> DoubleNumber:
    return _dispatch(_TRIG, kind)(h)


# -- hyperbolic functions ----------------------------------------------------------


def sinh(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    return DoubleNumber(math.sinh(t) * math.cosh(x), math.sinh(x) * math.cosh(t))


def cosh(h: DoubleNumber) -> DoubleNumber:
    # plus sign: cosh(jx) = cosh x and cosh(h) = cosh t cosh x + j sinh t sinh x
    t, x = h.t, h.x
    return DoubleNumber(math.cosh(t) * math.cosh(x), math.sinh(t) * math.sinh(x))


def tanh(h: DoubleNumber) -> DoubleNumber:
    # tanh t (1 - tanh^2 x) / (1 - tanh^2 t tanh^2 x) multiplied through by cosh^2 t cosh^2 x
    t, x = h.t, h.x
    den = math.cosh(2 * t) + math.cosh(2 * x)
    return DoubleNumber(math.sinh(2 * t) / den, math.sinh(2 * x) / den)


def coth(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    den = math.cosh(2 * t) - math.cosh(2 * x)
    if abs(den) < _POLE_TOL * math.cosh(2 * t):
        raise PoleError(f"coth has a pole at {h}")
    return DoubleNumber(math.sinh(2 * t) / den, -math.sinh(2 * x) / den)


def hyp(h: DoubleNumber, kind: str) -> DoubleNumber:
    return _dispatch(_HYP, kind)(h)


# -- inverse circular functions ------------------------------------------------------


def _square_check(h: DoubleNumber, name: str) -> tuple[float, float]:
    a, b = h.t + h.x, h.t - h.x
    if abs(a) > 1 or abs(b) > 1:
        raise DomainError(f"{name} needs |t+x| <= 1 and |t-x| <= 1, got {h}")
    return a, b


def arcsin(h: DoubleNumber) -> DoubleNumber:
    """Principal arcsine on the square |t+x| <= 1, |t-x| <= 1.

    The classical expression ``arcsin(a sqrt(1-b^2) + b sqrt(1-a^2))`` is
    the sine of the half-sum's double; pairing it with the matching
    cosine through ``atan2`` selects the correct branch.
    """
    a, b = _square_check(h, "arcsin")
    ca, cb = math.sqrt(1 - a * a), math.sqrt(1 - b * b)
    s_sum, c_sum = a * cb + b * ca, ca * cb - a * b
    s_dif, c_dif = a * cb - b * ca, ca * cb + a * b
    return DoubleNumber(0.5 * math.atan2(s_sum, c_sum), 0.5 * math.atan2(s_dif, c_dif))


def arccos(h: DoubleNumber) -> DoubleNumber:
    """Principal arccosine on the same square as :func:`arcsin`.

    The two classical arguments ``t^2 - x^2 -+ sqrt(1-(t-x)^2) sqrt(1-(t+x)^2)``
    are the cosines of the doubled real and imaginary parts; the sines
    fix the sign of the imaginary part and the leaf of the real part.
    """
    a, b = _square_check(h, "arccos")
    sa, sb = math.sqrt(1 - a * a), math.sqrt(1 - b * b)
    ab = h.t * h.t - h.x * h.x
    s_sum, c_sum = sa * b + a * sb, ab - sa * sb
    s_dif, c_dif = sa * b - a * sb, ab + sa * sb
    total = math.atan2(s_sum, c_sum)
    if a + b < 0:
        if total <= 0:
            total += 2 * math.pi
    else:
        total = max(total, 0.0)
    return DoubleNumber(0.5 * total, 0.5 * math.atan2(s_dif, c_dif))


def arctan(h: DoubleNumber) -> DoubleNumber:
    t, x = h.t, h.x
    return DoubleNumber(
        0.5 * math.atan2(2 * t, 1 - t * t + x * x),
        0.5 * math.atan2(2 * x, 1 + t * t - x * x),
    )


def arccot(h: DoubleNumber) -> DoubleNumber:
    # principal real arccot takes values in (0, pi)
    w = arctan(h)
    return DoubleNumber(math.pi / 2 - w.t, -w.x)


def trig_inv(h: DoubleNumber, kind: str) -> DoubleNumber:
    return _dispatch(_TRIG_INV, kind)(h)


# -- inverse hyperbolic functions --------------------------------------------------------


def arsinh(h: DoubleNumber) -> DoubleNumber:
    a, b = h.t + h.x, h.t - h.x
    p = a * math.sqrt(1 + b * b)
    q = b * math.sqrt(1 + a * a)
    return DoubleNumber(0.5 * math.asinh(p + q), 0.5 * math.asinh(p - q))


def arcosh(h: DoubleNumber) -> DoubleNumber:
    """Principal leaf of the four-valued inverse of cosh, for t+x >= 1 and t-x >= 1."""
    a, b = h.t + h.x, h.t - h.x
    if a < 1 or b < 1:
        raise DomainError(f"arcosh needs t+x >= 1 and t-x >= 1, got {h}")
    sa = math.sqrt((a - 1) * (a + 1))
    sb = math.sqrt((b - 1) * (b + 1))
    # sinh of the sum and difference of arcosh(a), arcosh(b)
    return DoubleNumber(0.5 * math.asinh(sa * b + a * sb), 0.5 * math.asinh(sa * b - a * sb))


def artanh(h: DoubleNumber) -> DoubleNumber:
    a, b = h.t + h.x, h.t - h.x
    if abs(a) >= 1 or abs(b) >= 1:
        raise DomainError(f"artanh needs |t+x| < 1 and |t-x| < 1, got {h}")
    ta, tb = math.atanh(a), math.atanh(b)
    return DoubleNumber(0.5 * (ta + tb), 0.5 * (ta - tb))


def arcoth(h: DoubleNumber) -> DoubleNumber:
    a, b = h.t + h.x, h.t - h.x
    if abs(a) <= 1 or abs(b) <= 1:
        raise DomainError(f"arcoth needs |t+x| > 1 and |t-x| > 1, got {h}")
    ta, tb = math.atanh(1 / a), math.atanh(1 / b)
    return DoubleNumber(0.5 * (ta + tb), 0.5 * (ta - tb))


def hyp_inv(h: DoubleNumber, kind: str) -> DoubleNumber:
    return _dispatch(_HYP_INV, kind)(h)


# -- rational maps --------------------------------------------------------------------------


def homographic(h: DoubleNumber, a, b, c, d) -> DoubleNumber:
    """``(a h + b) / (c h + d)`` for double coefficients."""
    a, b, c, d = map(as_double, (a, b, c, d))
    det = mul(a, d) - mul(b, c)
    if is_zero_divisor(det):
        raise DegenerateError(f"ad - bc = {det} is not invertible")
    den = mul(c, h) + d
    if is_zero_divisor(den):
        raise ConeError(f"{h} lies on the cone where c h + d is a zero divisor")
    return mul(mul(a, h) + b, inv(den))


def homographic_inverse(a, b, c, d) -> tuple[DoubleNumber, ...]:
    """Coefficients of the inverse map: ``(d, -b, -c, a)``."""
    a, b, c, d = map(as_double, (a, b, c, d))
    return d, -b, -c, a


def compose_homographic(outer: Sequence, inner: Sequence) -> tuple[DoubleNumber, ...]:
    """Coefficients of ``outer o inner`` (the 2x2 matrix product)."""
    a2, b2, c2, d2 = map(as_double, outer)
    a1, b1, c1, d1 = map(as_double, inner)
    return (
        mul(a2, a1) + mul(b2, c1),
        mul(a2, b1) + mul(b2, d1),
        mul(c2, a1) + mul(d2, c1),
        mul(c2, b1) + mul(d2, d1),
    )


def zhukowskiy(h: DoubleNumber) -> DoubleNumber:
    r = inv(h)
    return DoubleNumber((h.t + r.t) / 2, (h.x + r.x) / 2)


# -- registry ---------------------------------------------------------------------------------

_TRIG = {"sin": sin, "cos": cos, "tan": tan, "cot": cot}
_HYP = {"sinh": sinh, "cosh": cosh, "tanh": tanh, "coth": coth}
_TRIG_INV = {"arcsin": arcsin, "arccos": arccos, "arctan": arctan, "arccot": arccot}
_HYP_INV = {"arsinh": arsinh, "arcosh": arcosh, "artanh": artanh, "arcoth": arcoth}


def _dispatch(table, kind):
    try:
        return table[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(table)}") from None


def _sqr(f):
    return lambda r: f(r) ** 2


def _pos(f):
    def g(r):
        if r <= 0:
            raise ValueError("non-positive argument")
        return f(r)

    return g


def _outside_unit(f):
    def g(r):
        if abs(r) <= 1:
            raise ValueError("argument inside [-1, 1]")
        return f(r)

    return g


def _odd_root(n):
    return lambda r: math.copysign(abs(r) ** (1.0 / n), r)


def _root_profile(n, branch=0):
    if n % 2 == 0:
        if branch != 0:
            raise BranchError("only branch 0 has a single real profile")
        return _pos(lambda r: r ** (1.0 / n)), _pos(lambda r: r ** (1.0 / n - 1) / n)
    return _odd_root(n), lambda r: abs(r) ** (1.0 / n - 1) / n


@dataclass(frozen=True)
class Builtin:
    """A registered function: evaluator plus its real profile and derivative."""

    name: str
    func: Callable[..., DoubleNumber]
    profile: Callable[..., tuple]
    n_params: tuple[int, int] = (0, 0)

    def __call__(self, h: DoubleNumber, *params) -> DoubleNumber:
        return self.func(h, *params)

    def real_profile(self, *params):
        """``(f, f')`` on the real line for the given parameters."""
        return self.profile(*params)


def _simple(name, func, f, fprime):
    return Builtin(name, func, lambda: (f, fprime))


_HALF_PI = math.pi / 2

BUILTINS: dict[str, Builtin] = {
    b.name: b
    for b in (
        _simple("exp", exp, math.exp, math.exp),
        _simple("log", log, _pos(math.log), _pos(lambda r: 1 / r)),
        _simple("sin", sin, math.sin, math.cos),
        _simple("cos", cos, math.cos, lambda r: -math.sin(r)),
        _simple("tan", tan, math.tan, lambda r: 1 / math.cos(r) ** 2),
        _simple("cot", cot, lambda r: 1 / math.tan(r), lambda r: -1 / math.sin(r) ** 2),
        _simple("sinh", sinh, math.sinh, math.cosh),
        _simple("cosh", cosh, math.cosh, math.sinh),
        _simple("tanh", tanh, math.tanh, lambda r: 1 / math.cosh(r) ** 2),
        _simple("coth", coth, lambda r: 1 / math.tanh(r), lambda r: -1 / math.sinh(r) ** 2),
        _simple("arcsin", arcsin, math.asin, lambda r: 1 / math.sqrt(1 - r * r)),
        _simple("arccos", arccos, math.acos, lambda r: -1 / math.sqrt(1 - r * r)),
        _simple("arctan", arctan, math.atan, lambda r: 1 / (1 + r * r)),
        _simple("arccot", arccot, lambda r: _HALF_PI - math.atan(r), lambda r: -1 / (1 + r * r)),
        _simple("arsinh", arsinh, math.asinh, lambda r: 1 / math.sqrt(1 + r * r)),
        _simple("arcosh", arcosh, math.acosh, lambda r: 1 / math.sqrt(r * r - 1)),
        _simple("artanh", artanh, math.atanh, lambda r: 1 / (1 - r * r)),
        _simple(
            "arcoth",
            arcoth,
            _outside_unit(lambda r: math.atanh(1 / r)),
            lambda r: 1 / (1 - r * r),
        ),
        _simple("sqrt", sqrt, *_root_profile(2)),
        _simple("zhukowskiy", zhukowskiy, lambda r: (r + 1 / r) / 2, lambda r: (1 - 1 / (r * r)) / 2),
        Builtin("root", root, _root_profile, (1, 2)),
        Builtin(
            "pow",
            lambda h, n: pow_int(h, int(n)) if float(n).is_integer() else pow_real(h, float(n)),
            lambda n: (
                (lambda r: r**n) if float(n).is_integer() else _pos(lambda r: r**n),
                lambda r: n * r ** (n - 1),
            ),
            (1, 1),
        ),
    )
}


def get_builtin(name: str) -> Builtin:
    return BUILTINS[name]
