"""Wave-equation fields from h-holomorphic maps.

The real part of a holomorphic ``F`` satisfies ``phi_tt - phi_xx = 0``.
Choosing ``F`` so that ``Re F`` is constant on a world-line turns it into
the solution of a boundary problem with that line as the data curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy import optimize

from .algebra import DoubleNumber, as_double
from .errors import SplitPlaneError
from .expr import Apply, BinOp, Const, Var, as_function
from .holomorphy import StencilSpec, box_residual


@dataclass(frozen=True)
class WaveSolution:
    """``phi = Re F`` (plus ``phi0`` unless it is already folded into ``F``)."""

    F: object
    phi0: float = 0.0
    description: str = ""
    phi0_folded: bool = True


def log_circle_solution(R: float, phi0: float) -> WaveSolution:
    """``phi = phi0 + ln((t^2 - x^2) / R^2)`` on quadrant I.

    Written as ``F = 2 log(h / R) + phi0``; ``phi`` equals ``phi0`` on the
    hyperbolic circle ``t^2 - x^2 = R^2``.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    F = BinOp("+", BinOp("*", Const(2.0), Apply("log", BinOp("/", Var(), Const(float(R))))), Const(float(phi0)))
    return WaveSolution(F, float(phi0), f"phi = {phi0} on t^2 - x^2 = {R}^2, t > 0")


def potential(sol: WaveSolution, h) -> float:
    v = as_function(sol.F)(as_double(h)).t
    return v if sol.phi0_folded else v + sol.phi0


def _phi_field(sol: WaveSolution):
    return lambda t, x: potential(sol, DoubleNumber(t, x))


def time_slice(sol: WaveSolution, t: float, x_range: tuple[float, float], n: int) -> list[tuple[float, float | None]]:
    """``n`` samples of ``phi(t, x)``; points outside the domain give ``None``."""
    if n < 2:
        raise ValueError("need at least two samples")
    lo, hi = x_range
    out = []
    for k in range(n):
        # weighted form keeps symmetric ranges exactly symmetric
        x = (lo * (n - 1 - k) + hi * k) / (n - 1)
        try:
            out.append((x, potential(sol, DoubleNumber(t, x))))
        except SplitPlaneError:
            out.append((x, None))
    return out


def hyperbola_samples(R: float, n: int, u_max: float = 2.0) -> list[DoubleNumber]:
    """``n`` points ``R (cosh u, sinh u)`` on the upper branch of ``t^2 - x^2 = R^2``."""
    return [
        DoubleNumber(R * math.cosh(u), R * math.sinh(u))
        for u in (-u_max + 2 * u_max * k / (n - 1) for k in range(n))
    ]


def default_probe_grid(n: int = 10) -> list[DoubleNumber]:
    """Interior points with ``t`` in [1.2, 3] and ``|x| <= 0.8 t``."""
    pts = []
    for i in range(n):
        t = 1.2 + 1.8 * i / (n - 1)
        for k in range(n):
            pts.append(DoubleNumber(t, 0.8 * t * (-1 + 2 * k / (n - 1))))
    return pts


def verify_solution(
    sol: WaveSolution,
    boundary_samples: Sequence,
    tol: float,
    s: StencilSpec = StencilSpec(step=1e-3),
    probe: Iterable | None = None,
) -> dict:
    """Boundary deviation from ``phi0`` and the largest wave-operator residual on a probe grid."""
    phi = _phi_field(sol)
    dev = max((abs(potential(sol, p) - sol.phi0) for p in boundary_samples), default=0.0)
    probe = default_probe_grid() if probe is None else [as_double(p) for p in probe]
    box = max((abs(box_residual(phi, p, s)) for p in probe), default=0.0)
    return {
        "boundary_max_dev": dev,
        "interior_max_box_residual": box,
        "pass": bool(dev <= tol and box <= tol),
    }


def level_set(sol: WaveSolution, level: float, x_values: Sequence[float], t_max: float = 1e3) -> list[DoubleNumber]:
    """Points ``(t, x)`` with ``phi = level``, solving for ``t > |x|`` at each ``x``.

    Assumes ``phi`` increases in ``t`` along each vertical line, as for the
    log solution.
    """
    out = []
    for x in x_values:
        lo = abs(x) * (1 + 1e-12) + 1e-300
        while True:
            try:
                potential(sol, DoubleNumber(lo, x))
                break
            except SplitPlaneError:
                lo = lo * (1 + 1e-9) + 1e-12
        t = optimize.brentq(lambda t: potential(sol, DoubleNumber(t, x)) - level, lo, t_max, xtol=1e-15, rtol=1e-15)
        out.append(DoubleNumber(t, x))
    return out
