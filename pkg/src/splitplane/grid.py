"""Images of coordinate nets under double-variable maps, and angle checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import DoubleNumber, Region, SignFactor, as_double, classify, from_polar, PolarForm, modulus, mul, to_polar
from .contour import shoelace_area
from .errors import ConeError, MixedSectorError, SplitPlaneError
from .expr import as_function
from .holomorphy import DEFAULT_STENCIL, StencilSpec, derivative, require_conformal

_REGION_SIGN = {
    Region.QUADRANT_I: SignFactor.ONE,
    Region.QUADRANT_II: SignFactor.J,
    Region.QUADRANT_III: SignFactor.MINUS_ONE,
    Region.QUADRANT_IV: SignFactor.MINUS_J,
}


@dataclass(frozen=True)
class GridSpec:
    """A net of coordinate lines.

    For ``kind="cartesian"`` the ranges are ``t`` and ``x``; lines of
    constant ``t`` vary ``x`` and vice versa.  For ``kind="polar"`` the
    first range is ``rho`` and the second the hyperbolic angle ``psi``,
    inside quadrant ``region``.
    """

    t_range: tuple[float, float]
    x_range: tuple[float, float]
    n_t: int = 9
    n_x: int = 9
    samples_per_line: int = 101
    kind: str = "cartesian"
    region: Region = Region.QUADRANT_I

    def __post_init__(self):
        if min(self.n_t, self.n_x) < 1 or self.samples_per_line < 2:
            raise ValueError("line counts must be >= 1 and samples_per_line >= 2")
        if self.kind not in ("cartesian", "polar"):
            raise ValueError("kind must be 'cartesian' or 'polar'")
        if self.kind == "polar":
            if not self.region.is_quadrant:
                raise ValueError("polar grids live inside a single quadrant")
            if not self.t_range[0] > 0:
                raise ValueError("polar radius range must be positive")

    def point(self, u: float, v: float) -> DoubleNumber:
        if self.kind == "cartesian":
            return DoubleNumber(u, v)
        return from_polar(PolarForm(_REGION_SIGN[self.region], u, v))

    def lines(self):
        """``(line_id, axis, value, parameter values)`` with ``axis`` the held coordinate."""
        def ticks(rng, n):
            return [rng[0]] if n == 1 else list(np.linspace(rng[0], rng[1], n))

        out = []
        ident = 0
        for u in ticks(self.t_range, self.n_t):
            out.append((ident, 0, float(u), list(np.linspace(*self.x_range, self.samples_per_line))))
            ident += 1
        for v in ticks(self.x_range, self.n_x):
            out.append((ident, 1, float(v), list(np.linspace(*self.t_range, self.samples_per_line))))
            ident += 1
        return out


@dataclass
class Polyline:
    """Mapped grid line.  ``breaks`` are indices into ``points`` where a new valid run starts."""

    points: list = field(default_factory=list)
    source_line: int = 0
    axis: int = 0
    value: float = 0.0
    breaks: list = field(default_factory=list)

    def runs(self) -> list[list[DoubleNumber]]:
        cuts = [0] + self.breaks + [len(self.points)]
        return [self.points[a:b] for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def _safe(f, p):
    try:
        return f(p)
    except SplitPlaneError:
        return None


def _edge(f, inside: float, outside: float, at, iters: int = 40):
    """Bisect toward the domain edge; return the last parameter with a valid image."""
    for _ in range(iters):
        mid = 0.5 * (inside + outside)
        if _safe(f, at(mid)) is None:
            outside = mid
        else:
            inside = mid
    return inside


def map_grid(F, g: GridSpec, densify: bool = True) -> list[Polyline]:
    """Map every grid line through ``F``; points outside the domain become breaks.

    With ``densify`` the end of each valid run is pushed by bisection to
    the boundary of the domain so that images reach their limiting curves.
    """
    f = as_function(F)
    out = []
    for ident, axis, value, params in g.lines():
        def at(s, axis=axis, value=value):
            return g.point(value, s) if axis == 0 else g.point(s, value)

        pl = Polyline(source_line=ident, axis=axis, value=value)
        in_run, prev_s = False, None
        for s in params:
            img = _safe(f, at(s))
            if img is None:
                if in_run and densify:
                    edge = _edge(f, prev_s, s, at)
                    if edge != prev_s:
                        pl.points.append(f(at(edge)))
                in_run = False
            else:
                if not in_run:
                    if pl.points:
                        pl.breaks.append(len(pl.points))
                    if prev_s is not None and densify:
                        edge = _edge(f, s, prev_s, at)
                        if edge != s:
                            pl.points.append(f(at(edge)))
                pl.points.append(img)
                in_run = True
            prev_s = s
        out.append(pl)
    return out


def hyperbolic_angle(u: DoubleNumber, v: DoubleNumber) -> float:
    """``psi(v) - psi(u)`` for two directions of the same causal class."""
    ru, rv = classify(u), classify(v)
    if not (ru.is_quadrant and rv.is_quadrant):
        raise ConeError("angle undefined for cone directions")
    timelike = (Region.QUADRANT_I, Region.QUADRANT_III)
    if (ru in timelike) != (rv in timelike):
        raise MixedSectorError(f"{u} and {v} lie in different sector classes")
    return to_polar(v).psi - to_polar(u).psi


def angle_preservation_check(F, h: DoubleNumber, u: DoubleNumber, v: DoubleNumber, s: StencilSpec = DEFAULT_STENCIL) -> float:
    """``|angle(F' u, F' v) - angle(u, v)|`` at ``h``."""
    require_conformal(F, h, s)
    fp = derivative(F, h, s)
    return abs(hyperbolic_angle(mul(fp, u), mul(fp, v)) - hyperbolic_angle(u, v))


def length_ratio(F, h: DoubleNumber, direction: DoubleNumber, eps: float = 1e-4) -> float:
    """Pseudo-Euclidean length of the image of a short segment over its own length."""
    f = as_function(F)
    d = as_double(direction)
    half = DoubleNumber(0.5 * eps * d.t, 0.5 * eps * d.x)
    return modulus(f(h + half) - f(h - half)) / (eps * modulus(d))


def area_ratio(F, h: DoubleNumber, eps: float = 1e-4, per_side: int = 16) -> float:
    """Area of the image of a small square centred at ``h`` over the square's area."""
    f = as_function(F)
    c = eps / 2
    corners = [(-c, -c), (c, -c), (c, c), (-c, c)]
    pts = []
    for k in range(4):
        (t0, x0), (t1, x1) = corners[k], corners[(k + 1) % 4]
        for i in range(per_side):
            s = i / per_side
            pts.append(f(DoubleNumber(h.t + t0 + s * (t1 - t0), h.x + x0 + s * (x1 - x0))))
    return abs(shoelace_area(pts)) / (eps * eps)


def nearest_distances(polylines: Sequence[Polyline], targets: Sequence) -> list[float]:
    """Euclidean distance from each target to the nearest mapped point."""
    pts = [p for pl in polylines for p in pl.points]
    return [min(math.hypot(p.t - tg.t, p.x - tg.x) for p in pts) for tg in map(as_double, targets)]
