"""Command-line front end.

Every output carries ``meta = {version, command, parameters}``.  Exit
status is 0 on success, 1 on a mathematical error (domain, pole, cone,
overflow) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from .algebra import DoubleNumber, Region, parse_double
from .contour import (
    Contour,
    RegularizationParams,
    circle,
    circle_arc,
    contour_integral_with_error,
    curve_length,
    gamma_contour,
    polygon,
    power_residue,
    region_area,
    segment,
    cauchy_value,
)
from .errors import ExpressionSyntaxError, SplitPlaneError, UnknownFunctionError
from .export import dumps, polylines_csv, polylines_json, polylines_svg, rows_csv
from .grid import GridSpec, map_grid
from .parser import parse_expression
from .wave import hyperbola_samples, log_circle_solution, time_slice, verify_solution
from .holomorphy import StencilSpec


class UsageError(Exception):
    pass


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} numbers, got {len(vals)} in {text!r}")
    return vals


def _double(text: str) -> DoubleNumber:
    try:
        return parse_double(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def parse_contour(spec: str, panels: int | None = None):
    """``circle:ct,cx,r``, ``segment:t0,x0,t1,x1``, ``polygon:t0,x0,t1,x1,...``
    or ``gamma1:h0_t,h0_x,psi_max,r_inner,r_outer``."""
    kind, _, args = spec.partition(":")
    if kind == "circle":
        ct, cx, r = _floats(args, 3)
        return circle(DoubleNumber(ct, cx), r, panels)
    if kind == "segment":
        t0, x0, t1, x1 = _floats(args, 4)
        return Contour((segment(DoubleNumber(t0, x0), DoubleNumber(t1, x1), panels),))
    if kind == "polygon":
        v = _floats(args)
        if len(v) < 6 or len(v) % 2:
            raise UsageError("polygon needs at least three t,x pairs")
        return polygon([DoubleNumber(v[k], v[k + 1]) for k in range(0, len(v), 2)], panels or 1)
    if kind == "gamma1":
        ht, hx, psi, r_in, r_out = _floats(args, 5)
        reg = RegularizationParams(psi, r_in, r_out, panels)
        return gamma_contour(DoubleNumber(ht, hx), reg, 1)[0]
    raise UsageError(f"unknown contour kind {kind!r}")


def _arc(contour: Contour, spec: str, panels: int | None):
    """Sub-arc ``A-to-B`` of a circle contour, counter-clockwise from A to B."""
    a_txt, sep, b_txt = spec.partition("-to-")
    if not sep:
        raise UsageError("--arc must look like 'A-to-B'")
    seg = contour.segments[0]
    if len(contour.segments) != 1 or seg.tau_a != 0.0 or not math.isclose(seg.tau_b, 2 * math.pi):
        raise UsageError("--arc needs a circle contour")
    c = seg.point(math.pi) + seg.point(0.0)
    c = DoubleNumber(c.t / 2, c.x / 2)
    r = math.hypot(seg.point(0.0).t - c.t, seg.point(0.0).x - c.x)
    a, b = _double(a_txt), _double(b_txt)
    th0 = math.atan2(a.x - c.x, a.t - c.t)
    th1 = math.atan2(b.x - c.x, b.t - c.t)
    if th1 <= th0:
        th1 += 2 * math.pi
    return circle_arc(c, r, th0, th1, panels)


def _expr(text: str):
    return parse_expression(text)


# -- verbs ---------------------------------------------------------------------


def cmd_eval(a):
    F = _expr(a.expr)
    vals = [F(_double(p)) for p in a.at]
    return {"value": vals[0]} if len(vals) == 1 else {"values": vals}


def cmd_grid(a):
    F = _expr(a.expr)
    g = GridSpec(
        tuple(_floats(a.t_range, 2)),
        tuple(_floats(a.x_range, 2)),
        a.n_t,
        a.n_x,
        a.samples,
        a.kind,
        Region(a.region),
    )
    lines = map_grid(F, g)
    if a.format == "csv":
        return polylines_csv(lines)
    if a.format == "svg":
        return polylines_svg(lines)
    return {"polylines": polylines_json(lines)}


def cmd_integrate(a):
    F = _expr(a.expr)
    c = parse_contour(a.contour, a.panels)
    value, err = contour_integral_with_error(F, c)
    return {"value": value, "panels": [s.panels for s in c.segments], "est_error": err}


def _reg(a):
    return RegularizationParams(a.psi_max, a.r_inner, a.r_outer, a.panels)


def cmd_cauchy(a):
    F = _expr(a.expr)
    h0 = _double(a.h0)
    value = cauchy_value(F, h0, _reg(a), a.variant)
    exact = F(h0)
    return {"value": value, "direct": exact, "abs_error": math.hypot(value.t - exact.t, value.x - exact.x)}


def cmd_residue(a):
    return {"value": power_residue(a.alpha, _double(a.h0), _reg(a), a.shape), "ell_h": 4 * a.psi_max}


def cmd_length(a):
    c = parse_contour(a.contour, a.panels)
    if a.arc:
        c = _arc(c, a.arc, a.panels)
    return {"value": curve_length(c)}


def cmd_area(a):
    return {"value": region_area(parse_contour(a.contour, a.panels))}


def cmd_wave(a):
    sol = log_circle_solution(a.R, a.phi0)
    lo, hi = _floats(a.x_range, 2)
    rows = [(t, x, phi) for t in _floats(a.t) for x, phi in time_slice(sol, t, (lo, hi), a.n)]
    if a.format == "csv":
        return rows_csv(("t", "x", "phi"), rows)
    return {"F": str(sol.F), "slices": [{"t": t, "x": x, "phi": phi} for t, x, phi in rows]}


def cmd_verify(a):
    sol = log_circle_solution(a.R, a.phi0)
    report = verify_solution(sol, hyperbola_samples(a.R, a.samples), a.tol, StencilSpec(step=a.step))
    return {"F": str(sol.F), **report}


# -- parser ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitplane", description="Double-number analysis toolkit.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-o", "--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    def reg_args(sp):
        sp.add_argument("--h0", default="0")
        sp.add_argument("--psi-max", type=float, default=5.0)
        sp.add_argument("--r-inner", type=float, default=1e-8)
        sp.add_argument("--r-outer", type=float)
        sp.add_argument("--panels", type=int)

    sp = verb("eval", cmd_eval, "evaluate an expression at points")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--at", action="append", required=True)

    sp = verb("grid", cmd_grid, "map a coordinate net")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--t-range", default="-1,1", help="lo,hi (write --t-range=-2,2 for negative bounds)")
    sp.add_argument("--x-range", default="-1,1", help="lo,hi")
    sp.add_argument("--n-t", type=int, default=9)
    sp.add_argument("--n-x", type=int, default=9)
    sp.add_argument("--samples", type=int, default=101)
    sp.add_argument("--kind", choices=("cartesian", "polar"), default="cartesian")
    sp.add_argument("--region", choices=[r.value for r in Region if r.is_quadrant], default="QuadrantI")
    sp.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    sp = verb("integrate", cmd_integrate, "integrate F dh along a contour")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--contour", required=True)
    sp.add_argument("--panels", type=int)

    sp = verb("cauchy", cmd_cauchy, "regularised Cauchy formula")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--variant", type=int, choices=range(5), default=1)
    reg_args(sp)

    sp = verb("residue", cmd_residue, "integral of (h - h0)^alpha")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--shape", choices=("crossing", "closed_sector"), default="crossing")
    reg_args(sp)

    sp = verb("length", cmd_length, "pseudo-Euclidean length of a contour")
    sp.add_argument("--contour", required=True)
    sp.add_argument("--arc")
    sp.add_argument("--panels", type=int)

    sp = verb("area", cmd_area, "area enclosed by a closed contour")
    sp.add_argument("--contour", required=True)
    sp.add_argument("--panels", type=int)

    sp = verb("wave", cmd_wave, "time slices of the log wave solution")
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--phi0", type=float, default=1.0)
    sp.add_argument("--t", default="1,2,3,4")
    sp.add_argument("--x-range", default="-3.99,3.99", help="lo,hi (write --x-range=-2,2 for negative bounds)")
    sp.add_argument("--n", type=int, default=81)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = verb("verify", cmd_verify, "check the log wave solution")
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--phi0", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--step", type=float, default=1e-3)
    return p


def _render(result, meta: dict) -> str:
    if isinstance(result, dict):
        return dumps({"meta": meta, **result}) + "\n"
    header = dumps(meta)
    if result.lstrip().startswith("<svg"):
        head, _, rest = result.partition("\n")
        return f"{head}\n<!-- {header} -->\n{rest}"
    return f"# {header}\n{result}"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "verb", "out")}
        meta = {"version": __version__, "command": args.verb, "parameters": params}
        text = _render(args.fn(args), meta)
    except (UsageError, ExpressionSyntaxError, UnknownFunctionError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except SplitPlaneError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return 0
    try:
        sys.stdout.write(text)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush at exit
        sys.stdout = open(os.devnull, "w")
    return 0


if __name__ == "__main__":
    sys.exit(main())
