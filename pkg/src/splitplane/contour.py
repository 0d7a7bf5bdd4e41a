"""Curves, contours and quadrature on the double plane.

Integrals ``int F(h) dh`` are computed as ``sum_k w_k F(h(tau_k)) h'(tau_k)``
with double-number products.  Two composite rules are available:
``"trapezoid"`` (order 2, the default) and ``"gauss"`` (8-point
Gauss-Legendre per panel), used for the near-singular contours of the
residue and Cauchy computations.

Contours around a singular point ``h0`` are built in the relative
coordinate ``w = h - h0`` so that ``h - h0`` is never formed by
subtraction.  Hyperbolic arcs use ``w = rho e^{j psi}`` with
``dw/dpsi = j w``; rays use ``w = e^{s} e^{j psi}`` with ``dw/ds = w``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .algebra import (
    ZERO,
    DoubleNumber,
    as_double,
    conjugate,
    inv,
    is_zero_divisor,
    mul,
    rotate_quarter,
)
from .elementary import pow_int, pow_real
from .errors import ConeError, OpenContourError, SplitPlaneError
from .expr import as_function

J = DoubleNumber(0.0, 1.0)
GAUSS_POINTS = 8
RULES = ("trapezoid", "gauss")


def default_panels() -> int:
    return int(os.environ.get("SPLITPLANE_PANELS", "1024"))


@lru_cache(maxsize=None)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return tuple(float(v) for v in x), tuple(float(v) for v in w)


def _annotate(e: SplitPlaneError, where: str) -> SplitPlaneError:
    try:
        out = type(e)(f"{e} ({where})")
    except TypeError:
        return e
    out.__cause__ = e
    return out


@dataclass(frozen=True)
class Curve:
    """A smooth parametrised path ``tau -> point(tau)`` on ``[tau_a, tau_b]``.

    ``velocity`` is ``d point / d tau``.  ``orientation=-1`` traverses
    the same point set from ``tau_b`` to ``tau_a``.
    """

    point: Callable[[float], DoubleNumber]
    velocity: Callable[[float], DoubleNumber]
    tau_a: float
    tau_b: float
    panels: int = field(default_factory=default_panels)
    orientation: int = 1
    rule: str = "trapezoid"

    def __post_init__(self):
        if not self.tau_b > self.tau_a:
            raise ValueError("tau_b must exceed tau_a")
        if self.panels < 1:
            raise ValueError("panels must be >= 1")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}")

    @property
    def start(self) -> DoubleNumber:
        return self.point(self.tau_a if self.orientation > 0 else self.tau_b)

    @property
    def end(self) -> DoubleNumber:
        return self.point(self.tau_b if self.orientation > 0 else self.tau_a)

    def with_panels(self, n: int) -> "Curve":
        return replace(self, panels=n)

    def with_rule(self, rule: str) -> "Curve":
        return replace(self, rule=rule)

    def reversed(self) -> "Curve":
        return replace(self, orientation=-self.orientation)

    def nodes(self) -> list[tuple[float, float]]:
        """Quadrature nodes and signed weights."""
        n, a, b = self.panels, self.tau_a, self.tau_b
        edges = [a + (b - a) * k / n for k in range(n)] + [b]
        out = []
        if self.rule == "trapezoid":
            for k in range(n + 1):
                wl = edges[k] - edges[k - 1] if k > 0 else 0.0
                wr = edges[k + 1] - edges[k] if k < n else 0.0
                out.append((edges[k], 0.5 * (wl + wr)))
        else:
            gx, gw = _gauss(GAUSS_POINTS)
            for lo, hi in zip(edges[:-1], edges[1:]):
                mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
                out.extend((mid + half * xi, half * wi) for xi, wi in zip(gx, gw))
        return [(tau, self.orientation * w) for tau, w in out]

    def integrate(self, g: Callable[[DoubleNumber, DoubleNumber], DoubleNumber]) -> DoubleNumber:
        """``sum w_k g(h_k, h'_k)`` with deterministic compensated summation."""
        ts, xs = [], []
        for k, (tau, wt) in enumerate(self.nodes()):
            p = self.point(tau)
            try:
                v = g(p, self.velocity(tau))
            except SplitPlaneError as e:
                raise _annotate(e, f"node {k}, tau={tau!r}, h={p}") from e
            ts.append(wt * v.t)
            xs.append(wt * v.x)
        return DoubleNumber(math.fsum(ts), math.fsum(xs))

    def integrate_real(self, g: Callable[[DoubleNumber, DoubleNumber], float]) -> float:
        return math.fsum(wt * g(self.point(tau), self.velocity(tau)) for tau, wt in self.nodes())


@dataclass(frozen=True)
class Contour:
    segments: tuple
    closed: bool = False

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("a contour needs at least one segment")
        object.__setattr__(self, "segments", segs)
        pairs = list(zip(segs[:-1], segs[1:]))
        if self.closed:
            pairs.append((segs[-1], segs[0]))
        for c1, c2 in pairs:
            e, s = c1.end, c2.start
            if max(abs(e.t - s.t), abs(e.x - s.x)) > 1e-12 * max(1.0, abs(e.t), abs(e.x)):
                what = "does not return to its start" if c2 is segs[0] and self.closed else "has a gap"
                raise ValueError(f"contour {what}: {e} != {s}")

    @property
    def start(self) -> DoubleNumber:
        return self.segments[0].start

    @property
    def end(self) -> DoubleNumber:
        return self.segments[-1].end

    def with_panels(self, n: int) -> "Contour":
        return Contour(tuple(c.with_panels(n) for c in self.segments), self.closed)

    def with_rule(self, rule: str) -> "Contour":
        return Contour(tuple(c.with_rule(rule) for c in self.segments), self.closed)

    def reversed(self) -> "Contour":
        return Contour(tuple(c.reversed() for c in reversed(self.segments)), self.closed)

    def integrate(self, g) -> DoubleNumber:
        parts = [c.integrate(g) for c in self.segments]
        return DoubleNumber(math.fsum(p.t for p in parts), math.fsum(p.x for p in parts))


def _segments(c) -> tuple:
    return c.segments if isinstance(c, Contour) else (c,)


# -- builders ----------------------------------------------------------------


def segment(h0, h1, panels: int | None = None, rule: str = "trapezoid") -> Curve:
    h0, h1 = as_double(h0), as_double(h1)
    d = h1 - h0
    return Curve(
        lambda s: DoubleNumber(h0.t + s * d.t, h0.x + s * d.x) if s < 1 else h1,
        lambda s: d,
        0.0,
        1.0,
        panels or default_panels(),
        rule=rule,
    )


def circle_arc(center, r: float, theta0: float, theta1: float, panels: int | None = None, rule="trapezoid") -> Curve:
    """Euclidean circular arc, counter-clockwise when ``theta1 > theta0``."""
    c = as_double(center)
    lo, hi = sorted((theta0, theta1))
    return Curve(
        lambda th: DoubleNumber(c.t + r * math.cos(th), c.x + r * math.sin(th)),
        lambda th: DoubleNumber(-r * math.sin(th), r * math.cos(th)),
        lo,
        hi,
        panels or default_panels(),
        1 if theta1 > theta0 else -1,
        rule,
    )


def circle(center, r: float, panels: int | None = None, rule="trapezoid") -> Contour:
    """Positively oriented Euclidean circle as a closed contour."""
    if not r > 0:
        raise ValueError("radius must be positive")
    return Contour((circle_arc(center, r, 0.0, 2 * math.pi, panels, rule),), closed=True)


def polygon(vertices: Sequence, panels_per_edge: int = 1) -> Contour:
    vs = [as_double(v) for v in vertices]
    if len(vs) < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    edges = [segment(vs[k], vs[(k + 1) % len(vs)], panels_per_edge) for k in range(len(vs))]
    return Contour(tuple(edges), closed=True)


def hyperbolic_arc(
    center, rho: float, psi0: float, psi1: float, quarter: int = 0, panels: int | None = None, rule="trapezoid"
) -> Curve:
    """``center + R^q(rho e^{j psi})`` for psi from ``psi0`` to ``psi1``.

    ``R^q`` is the Euclidean quarter turn applied ``quarter`` times, which
    carries quadrant I of ``center`` into the other quadrants.
    """
    c = as_double(center)
    lo, hi = sorted((psi0, psi1))

    def w(p):
        return DoubleNumber(rho * math.cosh(p), rho * math.sinh(p))

    # the quarter turn does not commute with multiplication by j
    return Curve(
        lambda p: c + rotate_quarter(w(p), quarter),
        lambda p: rotate_quarter(mul(J, w(p)), quarter),
        lo,
        hi,
        panels or default_panels(),
        1 if psi1 > psi0 else -1,
        rule,
    )


def ray(center, psi: float, r0: float, r1: float, quarter: int = 0, panels: int | None = None, rule="trapezoid") -> Curve:
    """Straight ray ``center + R^q(r e^{j psi})`` from ``r = r0`` to ``r = r1``."""
    if not (r0 > 0 and r1 > 0) or r0 == r1:
        raise ValueError("ray radii must be positive and distinct")
    c = as_double(center)
    u = rotate_quarter(DoubleNumber(math.cosh(psi), math.sinh(psi)), quarter)
    lo, hi = sorted((math.log(r0), math.log(r1)))

    def w(s):
        e = math.exp(s)
        return DoubleNumber(e * u.t, e * u.x)

    return Curve(
        lambda s: c + w(s),
        w,
        lo,
        hi,
        panels or default_panels(),
        1 if r1 > r0 else -1,
        rule,
    )


# -- lengths and areas ----------------------------------------------------------


def _speed(c: Curve, tau: float) -> float:
    v = c.velocity(tau)
    return math.sqrt(abs((v.t + v.x) * (v.t - v.x)))


def _null_crossings(c: Curve, samples: int = 512) -> list[float]:
    def q(tau):
        v = c.velocity(tau)
        return (v.t + v.x) * (v.t - v.x)

    taus = np.linspace(c.tau_a, c.tau_b, samples + 1)
    vals = [q(float(s)) for s in taus]
    out = []
    for k in range(samples):
        a, b = vals[k], vals[k + 1]
        if a == 0.0:
            out.append(float(taus[k]))
        elif a * b < 0:
            out.append(optimize.brentq(q, float(taus[k]), float(taus[k + 1]), xtol=1e-15))
    return [p for p in out if c.tau_a < p < c.tau_b]


def curve_length(c, adaptive: bool = True) -> float:
    """Pseudo-Euclidean length ``int sqrt|h' conj(h')| dtau``.

    The adaptive route splits the parameter interval where the tangent
    crosses the cone, since the integrand has square-root kinks there.
    """
    total = []
    for seg in _segments(c):
        if adaptive:
            pts = [seg.tau_a] + _null_crossings(seg) + [seg.tau_b]
            for lo, hi in zip(pts[:-1], pts[1:]):
                val, _ = integrate.quad(lambda s: _speed(seg, s), lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
                total.append(val)
        else:
            total.append(math.fsum(abs(wt) * _speed(seg, tau) for tau, wt in seg.nodes()))
    return math.fsum(total)


def region_area(boundary: Contour) -> float:
    """Euclidean area enclosed by a closed contour, ``-(j/4) oint (h dh* - h* dh)``.

    Positive for counter-clockwise boundaries.
    """
    if not isinstance(boundary, Contour) or not boundary.closed:
        raise OpenContourError("region_area needs a closed contour")
    minus_j_quarter = DoubleNumber(0.0, -0.25)
    v = boundary.integrate(
        lambda p, dp: mul(minus_j_quarter, mul(p, conjugate(dp)) - mul(conjugate(p), dp))
    )
    return v.t


def shoelace_area(vertices: Sequence) -> float:
    vs = [as_double(v) for v in vertices]
    n = len(vs)
    return 0.5 * math.fsum(vs[k].t * vs[(k + 1) % n].x - vs[(k + 1) % n].t * vs[k].x for k in range(n))


# -- holomorphic integrals ---------------------------------------------------------


def contour_integral(F, c) -> DoubleNumber:
    """``int F(h) dh`` along a curve or contour."""
    f = as_function(F)
    return c.integrate(lambda p, dp: mul(f(p), dp))


def contour_integral_with_error(F, c) -> tuple[DoubleNumber, float]:
    """Integral plus the change against half the panel count, as an error estimate."""
    full = contour_integral(F, c)
    coarse_segs = tuple(s.with_panels(max(1, s.panels // 2)) for s in _segments(c))
    coarse = contour_integral(F, Contour(coarse_segs, c.closed) if isinstance(c, Contour) else coarse_segs[0])
    return full, max(abs(full.t - coarse.t), abs(full.x - coarse.x))


# -- regularised hyperbolic contours ------------------------------------------------


@dataclass(frozen=True)
class RegularizationParams:
    """Cutoffs replacing the divergent size of the hyperbolic angle space.

    ``psi_max`` bounds the hyperbolic angle, ``r_inner`` is the scale at
    which the near-cone rays stop, and ``r_outer`` the scale of the outer
    arc (default ``max(r_inner, e^{-psi_max})``).  ``panels`` scales the
    number of Gauss panels per piece.
    """

    psi_max: float
    r_inner: float
    r_outer: float | None = None
    panels: int | None = None

    def __post_init__(self):
        if not self.psi_max > 0:
            raise ValueError("psi_max must be positive")
        if not self.r_inner > 0:
            raise ValueError("r_inner must be positive")
        if self.r_outer is not None and not self.r_outer >= self.r_inner:
            raise ValueError("r_outer must be >= r_inner")

    def ell_h(self) -> float:
        return 4.0 * self.psi_max

    @property
    def outer(self) -> float:
        if self.r_outer is not None:
            return self.r_outer
        return max(self.r_inner, math.exp(-self.psi_max))

    def arc_panels(self) -> int:
        return self.panels or int(math.ceil(8 * self.psi_max)) + 8

    def ray_panels(self) -> int:
        return self.panels or int(math.ceil(4 * math.log(self.outer / self.r_inner))) + 8


def sector_pieces(reg: RegularizationParams, quarter: int = 0, closed: bool = False, center=ZERO) -> list[Curve]:
    """Regularised sector contour in quadrant ``quarter + 1`` of ``center``.

    Open form: ray ``psi = -Psi`` outwards to ``r_outer``, the arc from
    ``-Psi`` to ``Psi``, then ray ``psi = Psi`` back to ``r_inner``.  The
    closed form adds the inner arc from ``Psi`` back to ``-Psi``.
    """
    P, ri, ro = reg.psi_max, reg.r_inner, reg.outer
    pieces = []
    if ro > ri:
        pieces.append(ray(center, -P, ri, ro, quarter, reg.ray_panels(), "gauss"))
    elif closed:
        raise ValueError("a closed sector needs r_outer > r_inner")
    pieces.append(hyperbolic_arc(center, ro, -P, P, quarter, reg.arc_panels(), "gauss"))
    if ro > ri:
        pieces.append(ray(center, P, ro, ri, quarter, reg.ray_panels(), "gauss"))
    if closed:
        pieces.append(hyperbolic_arc(center, ri, P, -P, quarter, reg.arc_panels(), "gauss"))
    return pieces


def gamma_contour(h0, reg: RegularizationParams, variant: int = 1) -> list[Contour]:
    """Absolute-coordinate pieces of the open contour for ``variant`` (0..4)."""
    quarters = (0, 2) if variant == 0 else (variant - 1,)
    return [Contour(tuple(sector_pieces(reg, q, center=as_double(h0)))) for q in quarters]


def _power_fn(alpha: float) -> Callable[[DoubleNumber], DoubleNumber]:
    if float(alpha).is_integer():
        n = int(alpha)
        return lambda w: pow_int(w, n)
    return lambda w: pow_real(w, alpha)


def _sum(parts: Sequence[DoubleNumber]) -> DoubleNumber:
    return DoubleNumber(math.fsum(p.t for p in parts), math.fsum(p.x for p in parts))


def _guard_cone(w: DoubleNumber) -> None:
    if is_zero_divisor(w):
        raise ConeError(f"node h - h0 = {w} lies on the cone of h0")


def power_residue(alpha: float, h0, reg: RegularizationParams, shape: str = "crossing") -> DoubleNumber:
    """``oint (h - h0)^alpha dh`` over a regularised contour.

    ``shape="closed_sector"`` is a closed annular sector inside quadrant I
    of ``h0``; nothing singular is enclosed, so the result vanishes.

    ``shape="crossing"`` runs the open contour through quadrant I of
    ``h0`` and its point reflection through quadrant III, each closed by
    rays running transversally in to the cone.  For ``alpha = -1`` the
    two arcs contribute ``j 2 Psi`` each, giving ``j 4 Psi``; the ray
    pairs cancel because they stop at equal radii.  For even integer
    ``alpha`` the two halves cancel exactly.  Non-integer ``alpha`` is
    not defined in quadrant III and raises :class:`DomainError`.
    """
    as_double(h0)
    power = _power_fn(alpha)

    def g(w, dw):
        _guard_cone(w)
        return mul(power(w), dw)

    if shape == "closed_sector":
        pieces = sector_pieces(reg, 0, closed=True)
    elif shape in ("crossing", "crossing_gamma1"):
        pieces = sector_pieces(reg, 0) + sector_pieces(reg, 2)
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return _sum([c.integrate(g) for c in pieces])


def _cauchy_prefactor(reg: RegularizationParams, variant: int) -> DoubleNumber:
    # 1 / j == j
    if variant == 0:
        return DoubleNumber(0.0, 1.0 / reg.ell_h())
    return DoubleNumber(0.0, (-1) ** (variant + 1) * 2.0 / reg.ell_h())


def cauchy_value(F, h0, reg: RegularizationParams, variant: int = 1) -> DoubleNumber:
    """Regularised hyperbolic Cauchy formula.

    ``variant`` n in 1..4 integrates ``F(h)/(h - h0)`` over the open
    contour in the n-th quadrant of ``h0`` with prefactor
    ``(-1)^{n+1} 2 / (ell_h j)``; ``variant=0`` uses quadrants I and III
    together with prefactor ``1 / (ell_h j)``.
    """
    if variant not in range(5):
        raise ValueError("variant must be 0..4")
    f = as_function(F)
    h0 = as_double(h0)

    def g(w, dw):
        _guard_cone(w)
        return mul(mul(f(h0 + w), inv(w)), dw)

    quarters = (0, 2) if variant == 0 else (variant - 1,)
    parts = [c.integrate(g) for q in quarters for c in sector_pieces(reg, q)]
    return mul(_cauchy_prefactor(reg, variant), _sum(parts))


def cauchy_error_model(fprime_h0: DoubleNumber, reg: RegularizationParams, variant: int = 1) -> DoubleNumber:
    """Leading-order error of :func:`cauchy_value`.

    Expanding ``F(h0 + w) = F(h0) + F'(h0) w`` the linear term integrates
    to ``F'(h0)`` times the gap between the contour's end points, which
    sit at ``r_inner`` on the rays ``psi = +-Psi``.  For ``variant=1``
    this is ``F'(h0) r_inner sinh(Psi) / Psi``, independent of ``r_outer``.
    """
    quarters = (0, 2) if variant == 0 else (variant - 1,)
    gap = ZERO
    for q in quarters:
        pieces = sector_pieces(reg, q)
        gap = gap + (pieces[-1].end - pieces[0].start)
    return mul(mul(_cauchy_prefactor(reg, variant), as_double(fprime_h0)), gap)


def circle_polar_radius(r: float, psi: float) -> float:
    """Hyperbolic polar radius of the Euclidean circle: ``r / sqrt(cosh 2 psi)``."""
    a = abs(psi)
    return r * math.sqrt(2.0) * math.exp(-a) / math.sqrt(1.0 + math.exp(-4.0 * a))
