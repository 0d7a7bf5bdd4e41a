"""Finite-difference diagnostics for maps of the double plane.

All partial derivatives are central differences.  With ``F = U + jV``
the hyperbolic Cauchy-Riemann conditions read ``U_t = V_x`` and
``U_x = V_t``; the residual functions below return the defects of
these and of the related wave-operator and orthogonality identities.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .algebra import DoubleNumber, classify, conjugate, inv, mul, to_polar
from .errors import BrokenConformalityError, ConeError
from .expr import as_function

RealField = Callable[[float, float], float]

# first-derivative weights at offsets 1, 2 (antisymmetric stencils)
_D1 = {2: ((1, 0.5),), 4: ((1, 2 / 3), (2, -1 / 12))}
# second-derivative weights: centre weight plus offsets 1, 2 (symmetric stencils)
_D2 = {2: (-2.0, ((1, 1.0),)), 4: (-2.5, ((1, 4 / 3), (2, -1 / 12)))}


@dataclass(frozen=True)
class StencilSpec:
    """Central-difference spacing and accuracy order.

    ``step=None`` picks a default scaled by ``max(1, |t|, |x|)`` at the
    query point: ``first`` for first derivatives, ``second`` for the
    wave operator, whose roundoff grows like ``eps / step**2``.
    """

    step: float | None = None
    order: int = 2
    first: float = 1e-5
    second: float = 1e-3

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")
        if self.step is not None and not self.step > 0:
            raise ValueError("stencil step must be positive")

    def resolve(self, h: DoubleNumber, second: bool = False) -> float:
        if self.step is not None:
            return self.step
        scale = max(1.0, abs(h.t), abs(h.x))
        return (self.second if second else self.first) * scale


DEFAULT_STENCIL = StencilSpec()


def _d1(f: Callable[[float], float], d: float, order: int) -> float:
    return math.fsum(w * (f(k * d) - f(-k * d)) for k, w in _D1[order]) / d


def _partials(F, h: DoubleNumber, s: StencilSpec):
    """``(U_t, U_x, V_t, V_x)`` at ``h``."""
    f = as_function(F)
    d = s.resolve(h)
    along_t = {}
    along_x = {}
    for k, _ in _D1[s.order]:
        for sg in (1, -1):
            along_t[sg * k] = f(DoubleNumber(h.t + sg * k * d, h.x))
            along_x[sg * k] = f(DoubleNumber(h.t, h.x + sg * k * d))

    def diff(table, comp):
        return math.fsum(w * (getattr(table[k], comp) - getattr(table[-k], comp)) for k, w in _D1[s.order]) / d

    return diff(along_t, "t"), diff(along_x, "t"), diff(along_t, "x"), diff(along_x, "x")


def derivative(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> DoubleNumber:
    """``dF/dh`` from the difference quotient along the real direction."""
    f = as_function(F)
    d = s.resolve(h)
    terms = [(w, f(DoubleNumber(h.t + k * d, h.x)), f(DoubleNumber(h.t - k * d, h.x))) for k, w in _D1[s.order]]
    return DoubleNumber(
        math.fsum(w * (p.t - m.t) for w, p, m in terms) / d,
        math.fsum(w * (p.x - m.x) for w, p, m in terms) / d,
    )


def directional_derivative(F, h: DoubleNumber, u: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> DoubleNumber:
    """``(F(h + d u) - F(h - d u)) / (2 d u)`` for a non-null direction ``u``.

    For holomorphic ``F`` every non-null direction gives the same value.
    """
    f = as_function(F)
    d = s.resolve(h)
    num = DoubleNumber(0.0, 0.0)
    for k, w in _D1[s.order]:
        off = DoubleNumber(k * d * u.t, k * d * u.x)
        num = num + w * (f(h + off) - f(h - off))
    return mul(num, inv(DoubleNumber(d * u.t, d * u.x)))


def cr_residual(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> tuple[float, float]:
    """``(U_t - V_x, U_x - V_t)``."""
    ut, ux, vt, vx = _partials(F, h, s)
    return ut - vx, ux - vt


def divrot_residual(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> tuple[float, float]:
    """``(roth, divh) = (U_x - V_t, U_t - V_x)`` of the field ``U - jV``."""
    ut, ux, vt, vx = _partials(F, h, s)
    return ux - vt, ut - vx


def gradient_orthogonality(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> float:
    """Minkowski product ``U_t V_t - U_x V_x`` of the two gradients."""
    ut, ux, vt, vx = _partials(F, h, s)
    return ut * vt - ux * vx


def polar_cr_residual(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> tuple[float, float]:
    """Cauchy-Riemann defects of ``ln rho_F + j psi_F``.

    Every stencil image must lie in the same quadrant as ``F(h)``.
    """
    f = as_function(F)
    region = classify(f(h))
    if not region.is_quadrant:
        raise ConeError(f"F({h}) lies on {region.value}")

    def polar(t, x):
        v = f(DoubleNumber(t, x))
        if classify(v) is not region:
            raise ConeError(f"stencil image {v} leaves {region.value}")
        p = to_polar(v)
        return math.log(p.rho), p.psi

    d = s.resolve(h)
    vals = {}
    for k, _ in _D1[s.order]:
        for sg in (1, -1):
            vals["t", sg * k] = polar(h.t + sg * k * d, h.x)
            vals["x", sg * k] = polar(h.t, h.x + sg * k * d)

    def diff(axis, comp):
        return math.fsum(w * (vals[axis, k][comp] - vals[axis, -k][comp]) for k, w in _D1[s.order]) / d

    return diff("t", 0) - diff("x", 1), diff("x", 0) - diff("t", 1)


def box_residual(g: RealField, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> float:
    """Wave operator ``g_tt - g_xx`` by the five-point (order 2) or nine-point (order 4) stencil."""
    d = s.resolve(h, second=True)
    c, offs = _D2[s.order]
    t, x = h.t, h.x
    g0 = g(t, x)
    # the centre terms cancel between the two axes
    tt = math.fsum([c * g0] + [w * (g(t + k * d, x) + g(t - k * d, x)) for k, w in offs])
    xx = math.fsum([c * g0] + [w * (g(t, x + k * d) + g(t, x - k * d)) for k, w in offs])
    return (tt - xx) / (d * d)


def conformal_factor(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> float:
    """Signed ``F'(h) conj(F'(h))``, the Jacobian determinant of ``(U, V)``."""
    fp = derivative(F, h, s)
    return mul(fp, conjugate(fp)).t


def require_conformal(F, h: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL, tol: float = 1e-8) -> float:
    """Conformal factor, raising where it vanishes (the map folds angles there)."""
    k = conformal_factor(F, h, s)
    if abs(k) <= tol:
        raise BrokenConformalityError(f"conformal factor {k:.3g} vanishes at {h}")
    return k


def harmonic_conjugate(
    U: RealField,
    base: DoubleNumber,
    target: DoubleNumber,
    path=None,
    panels: int = 10_000,
    s: StencilSpec = DEFAULT_STENCIL,
) -> float:
    """``V(target) - V(base)`` from ``dV = U_x dt + U_t dx`` along ``path``.

    ``path`` is a :class:`splitplane.contour.Curve` or ``Contour``
    starting at ``base``; by default the straight segment is used.
    """
    from .contour import Contour, segment

    if path is None:
        path = segment(base, target, panels=panels)
    curves = path.segments if isinstance(path, Contour) else (path,)

    def dv(p: DoubleNumber, dp: DoubleNumber) -> float:
        d = s.resolve(p)
        ut = _d1(lambda e: U(p.t + e, p.x), d, s.order)
        ux = _d1(lambda e: U(p.t, p.x + e), d, s.order)
        return ux * dp.t + ut * dp.x

    return math.fsum(c.integrate_real(dv) for c in curves)


def residual_grid(
    F,
    t_values: Iterable[float],
    x_values: Iterable[float],
    kind: str = "cr",
    s: StencilSpec = DEFAULT_STENCIL,
) -> list[tuple[float, float, float, float]]:
    """Rows ``(t, x, r1, r2)``; points where evaluation fails get NaN residuals."""
    kinds = {
        "cr": cr_residual,
        "divrot": divrot_residual,
        "polar": polar_cr_residual,
        "box": lambda F, h, s: (
            box_residual(lambda t, x: as_function(F)(DoubleNumber(t, x)).t, h, s),
            box_residual(lambda t, x: as_function(F)(DoubleNumber(t, x)).x, h, s),
        ),
        "orth": lambda F, h, s: (gradient_orthogonality(F, h, s), 0.0),
    }
    fn = kinds[kind]
    xs = list(x_values)
    rows = []
    for t in t_values:
        for x in xs:
            try:
                r1, r2 = fn(F, DoubleNumber(t, x), s)
            except ArithmeticError:
                r1 = r2 = math.nan
            rows.append((t, x, r1, r2))
    return rows


def write_residual_csv(rows: Sequence[tuple], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "r1", "r2"])
        w.writerows(rows)


def observed_order(steps: Sequence[float], residuals: Sequence[float]) -> float:
    """Least-squares slope of ``log|r|`` against ``log step``."""
    lx = [math.log(v) for v in steps]
    ly = [math.log(max(abs(r), 1e-300)) for r in residuals]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)
