import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitplane.algebra import DoubleNumber
from splitplane.contour import (
    Contour,
    RegularizationParams,
    cauchy_error_model,
    cauchy_value,
    circle,
    circle_arc,
    circle_polar_radius,
    contour_integral,
    contour_integral_with_error,
    curve_length,
    default_panels,
    gamma_contour,
    hyperbolic_arc,
    polygon,
    power_residue,
    ray,
    region_area,
    segment,
    shoelace_area,
)
from splitplane.elementary import BUILTINS
from splitplane.errors import DomainError, OpenContourError, ZeroDivisorError
from splitplane.expr import builtin, conj, const, h
from splitplane.parser import parse_expression


def D(t, x=0.0):
    return DoubleNumber(t, x)


def close(u, v, tol):
    return abs(u.t - v.t) <= tol and abs(u.x - v.x) <= tol


# -- lengths -----------------------------------------------------------------------


def test_segment_lengths():
    assert curve_length(segment(D(0), D(3))) == pytest.approx(3, rel=1e-12)
    assert curve_length(segment(D(0), D(0, 2))) == pytest.approx(2, rel=1e-12)
    assert curve_length(segment(D(0), D(2, 2))) == pytest.approx(0, abs=1e-12)
    assert curve_length(segment(D(0), D(5, 3))) == pytest.approx(4, rel=1e-12)


def test_unit_arc_length():
    # 2 sqrt2 [E(k) - K(k)/2] at k = 1/sqrt2, from the complete elliptic integrals
    from scipy.special import ellipe, ellipk

    m = 0.5
    want = 2 * math.sqrt(2) * (ellipe(m) - ellipk(m) / 2)
    got = curve_length(circle_arc(D(0), 1.0, 0.0, math.pi / 2))
    assert got == pytest.approx(want, abs=1e-10)
    assert got == pytest.approx(1.1981, abs=1e-3)


def test_full_circle_is_four_quarter_arcs():
    quarter = curve_length(circle_arc(D(0), 1.0, 0.0, math.pi / 2))
    assert curve_length(circle(D(0), 1.0)) == pytest.approx(4 * quarter, rel=1e-10)


def test_hyperbolic_arc_length_is_rho_times_angle():
    arc = hyperbolic_arc(D(0.3, 0.1), 2.0, -0.7, 1.2, quarter=1, panels=64, rule="gauss")
    assert curve_length(arc) == pytest.approx(2.0 * 1.9, rel=1e-10)


def test_non_adaptive_length_agrees_on_smooth_arc():
    arc = hyperbolic_arc(D(0), 1.5, 0.0, 1.0, panels=64, rule="gauss")
    assert curve_length(arc, adaptive=False) == pytest.approx(1.5, rel=1e-12)


# -- areas -------------------------------------------------------------------------


def test_square_area():
    sq = polygon([D(0), D(1), D(1, 1), D(0, 1)])
    assert region_area(sq) == pytest.approx(1, abs=1e-12)
    assert region_area(sq.reversed()) == pytest.approx(-1, abs=1e-12)


def test_circle_area():
    assert region_area(circle(D(0.4, -0.2), 1.0)) == pytest.approx(math.pi, rel=1e-12)


def test_polygon_area_matches_shoelace():
    vs = [D(math.cos(2 * math.pi * k / 12) * (1 + 0.3 * (k % 3)), math.sin(2 * math.pi * k / 12)) for k in range(12)]
    assert region_area(polygon(vs)) == pytest.approx(shoelace_area(vs), abs=1e-10)


def test_open_contour_area_rejected():
    with pytest.raises(OpenContourError):
        region_area(Contour((segment(D(0), D(1)),)))


def test_discontinuous_contour_rejected():
    with pytest.raises(ValueError):
        Contour((segment(D(0), D(1)), segment(D(2), D(3))))


# -- integrals ---------------------------------------------------------------------


@pytest.mark.parametrize("src", ["h^2", "exp(h)", "sin(h)", "cosh(h)*h"])
def test_cauchy_theorem_on_circle(src):
    v = contour_integral(parse_expression(src), circle(D(0), 1.0, 4096))
    assert abs(v.t) < 1e-8 and abs(v.x) < 1e-8


def test_conj_integral_measures_area():
    # oint conj(h) dh = 2 j Area for a counter-clockwise boundary
    v = contour_integral(conj(h), circle(D(0), 1.0))
    assert close(v, D(0, 2 * math.pi), 1e-12)


def test_open_path_antiderivative():
    path = Contour((segment(D(0), D(1, 0.3), 64, "gauss"), segment(D(1, 0.3), D(0.5, 1.2), 64, "gauss")))
    v = contour_integral(builtin("exp"), path)
    want = BUILTINS["exp"](D(0.5, 1.2)) - BUILTINS["exp"](D(0))
    assert close(v, want, 1e-12)


def test_trapezoid_order_two_on_polygon():
    tri = [D(0), D(1, 0.2), D(0.3, 0.9)]
    F = builtin("exp")(h * h)
    want = contour_integral(F, polygon(tri, 8).with_rule("gauss"))
    errs = []
    for n in (32, 64, 128):
        v = contour_integral(F, polygon(tri, n))
        errs.append(math.hypot(v.t - want.t, v.x - want.x))
    assert errs[0] / errs[1] == pytest.approx(4, abs=0.2)
    assert errs[1] / errs[2] == pytest.approx(4, abs=0.2)


def test_error_estimate_reported():
    # trapezoid edges do not integrate h^2 exactly; the halving estimate brackets the error
    v, err = contour_integral_with_error(parse_expression("h^2"), polygon([D(0), D(1), D(0, 1)], 50))
    true_err = math.hypot(v.t, v.x)
    assert true_err < err < 4 * true_err


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5), st.floats(0.2, 2.0))
def test_homotopy_invariance(ct, cx, r):
    F = builtin("exp")(h)
    v = contour_integral(F, circle(D(ct, cx), r, 512))
    assert abs(v.t) < 1e-9 and abs(v.x) < 1e-9


def test_default_panels_env(monkeypatch):
    monkeypatch.setenv("SPLITPLANE_PANELS", "64")
    assert default_panels() == 64
    assert circle(D(0), 1.0).segments[0].panels == 64
    monkeypatch.delenv("SPLITPLANE_PANELS")
    assert default_panels() == 1024


# -- regularised contours ----------------------------------------------------------


def test_ray_and_arc_endpoints():
    r = ray(D(1, 0.5), 0.3, 0.5, 2.0, quarter=2)
    assert close(r.start, D(1 - 0.5 * math.cosh(0.3), 0.5 - 0.5 * math.sinh(0.3)), 1e-14)
    arc = hyperbolic_arc(D(0), 2.0, -1.0, 1.0, quarter=1)
    # quarter turn (t, x) -> (-x, t)
    assert close(arc.start, D(2 * math.sinh(1.0), 2 * math.cosh(1.0)), 1e-14)


def test_gamma_contour_pieces():
    reg = RegularizationParams(2.0, 0.1, 1.0)
    (c,) = gamma_contour(D(0.5), reg, 1)
    assert len(c.segments) == 3
    assert len(gamma_contour(D(0.5), reg, 0)) == 2


def test_closed_sector_residues_vanish():
    reg = RegularizationParams(2.0, 0.5, 2.0)
    for alpha in (-2, -1, 0, 1, 2):
        v = power_residue(alpha, D(0.3, 0.1), reg, "closed_sector")
        assert abs(v.t) < 1e-10 and abs(v.x) < 1e-10


@pytest.mark.parametrize("psi", [2.0, 5.0, 10.0])
def test_crossing_residue_is_j_4psi(psi):
    v = power_residue(-1, D(0), RegularizationParams(psi, 1e-8))
    assert abs(v.t) < 1e-9
    assert v.x == pytest.approx(4 * psi, rel=1e-8)


@pytest.mark.parametrize("alpha", [-2, 0, 2])
def test_crossing_even_powers_cancel(alpha):
    v = power_residue(alpha, D(0.2, 0.1), RegularizationParams(5.0, 1e-8))
    assert abs(v.t) < 1e-6 and abs(v.x) < 1e-6


def test_crossing_rejects_non_integer_power():
    with pytest.raises(DomainError):
        power_residue(0.5, D(0), RegularizationParams(2.0, 1e-3))


def test_cauchy_constant():
    v = cauchy_value(const(1.0), D(0), RegularizationParams(5.0, 1e-8))
    assert close(v, D(1), 1e-9)


@pytest.mark.parametrize(
    "src, h0",
    [("exp(h)", D(0.5, 0.1)), ("h^2", D(1, 0.2)), ("sin(h)", D(0.3, -0.4))],
)
def test_cauchy_recovers_value(src, h0):
    F = parse_expression(src)
    want = F(h0)
    v = cauchy_value(F, h0, RegularizationParams(5.0, 1e-8))
    assert close(v, want, 1e-3 * max(1.0, abs(want.t), abs(want.x)))


def test_cauchy_exp_example():
    v = cauchy_value(builtin("exp"), D(0.5, 0.1), RegularizationParams(5.0, 1e-8))
    # null oracle: components e^0.6, e^0.4
    want = D((math.exp(0.6) + math.exp(0.4)) / 2, (math.exp(0.6) - math.exp(0.4)) / 2)
    assert close(v, want, 1e-6)
    assert close(v, D(1.6569674, 0.1651517), 1e-3 * 1.66)


def test_cauchy_two_sector_variant_cancels_linear_error():
    h0 = D(0.2, 0.1)
    reg = RegularizationParams(5.0, 1e-6)
    err = cauchy_value(builtin("exp"), h0, reg, 0) - BUILTINS["exp"](h0)
    assert cauchy_error_model(BUILTINS["exp"](h0), reg, 0) == D(0)
    one = cauchy_error_model(BUILTINS["exp"](h0), reg, 1)
    assert max(abs(err.t), abs(err.x)) < 1e-3 * abs(one.t)


@pytest.mark.parametrize("variant", [1, 2, 3, 4])
def test_cauchy_variants_follow_error_model(variant):
    h0 = D(0.2, 0.1)
    reg = RegularizationParams(5.0, 1e-6)
    F = builtin("exp")
    v = cauchy_value(F, h0, reg, variant)
    model = cauchy_error_model(BUILTINS["exp"](h0), reg, variant)
    err = v - F(h0)
    assert close(err, model, 0.05 * max(abs(model.t), abs(model.x)) + 1e-12)


def test_cauchy_rejects_bad_variant():
    with pytest.raises(ValueError):
        cauchy_value(h, D(0), RegularizationParams(1.0, 0.1), 7)


def test_nodes_on_cone_raise():
    with pytest.raises(ValueError):
        RegularizationParams(1.0, 0.0)
    with pytest.raises(ZeroDivisorError, match="node 0"):
        contour_integral(parse_expression("h^-1"), segment(D(-1, -1), D(1, 1)))


def test_circle_polar_radius():
    assert circle_polar_radius(2.0, 0.0) == pytest.approx(2.0)
    for psi in (0.3, -1.2, 8.0):
        want = 2.0 / math.sqrt(math.cosh(2 * psi))
        assert circle_polar_radius(2.0, psi) == pytest.approx(want, rel=1e-13)
    assert circle_polar_radius(1.0, 400.0) > 0
