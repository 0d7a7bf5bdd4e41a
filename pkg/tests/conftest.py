import math
import random

import pytest
from hypothesis import strategies as st

from splitplane.algebra import DoubleNumber, NullPair, null_join

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
doubles = st.builds(DoubleNumber, finite, finite)
small = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
small_doubles = st.builds(DoubleNumber, small, small)


def _interval(lo, hi, keep=lambda r: True):
    def draw(rng):
        while True:
            r = rng.uniform(lo, hi)
            if keep(r):
                return r

    return draw


def _pole_free(f, margin):
    return lambda r: abs(f(r)) > margin


# (name, params) -> sampler for one null coordinate inside the real profile's domain
NULL_DOMAINS = {
    ("exp", ()): _interval(-20, 20),
    ("log", ()): _interval(1e-3, 50),
    ("sin", ()): _interval(-10, 10),
    ("cos", ()): _interval(-10, 10),
    ("tan", ()): _interval(-10, 10, _pole_free(math.cos, 0.05)),
    ("cot", ()): _interval(-10, 10, _pole_free(math.sin, 0.05)),
    ("sinh", ()): _interval(-20, 20),
    ("cosh", ()): _interval(-20, 20),
    ("tanh", ()): _interval(-20, 20),
    ("coth", ()): _interval(-20, 20, lambda r: abs(r) > 0.05),
    ("arcsin", ()): _interval(-1, 1),
    ("arccos", ()): _interval(-1, 1),
    ("arctan", ()): _interval(-50, 50),
    ("arccot", ()): _interval(-50, 50),
    ("arsinh", ()): _interval(-50, 50),
    ("arcosh", ()): _interval(1, 50),
    ("artanh", ()): _interval(-0.999, 0.999),
    ("arcoth", ()): _interval(-50, 50, lambda r: abs(r) > 1.001),
    ("sqrt", ()): _interval(1e-3, 50),
    ("zhukowskiy", ()): _interval(-20, 20, lambda r: abs(r) > 0.05),
    ("root", (2,)): _interval(1e-3, 50),
    ("root", (3,)): _interval(-50, 50),
    ("root", (5,)): _interval(-50, 50),
    ("pow", (2,)): _interval(-10, 10),
    ("pow", (-3,)): _interval(-10, 10, lambda r: abs(r) > 0.1),
    ("pow", (0.5,)): _interval(1e-3, 50),
    ("pow", (2.5,)): _interval(1e-3, 10),
}

# holomorphic builtins with a comfortable interior sampler for stencil checks
INTERIOR = {
    ("exp", ()): _interval(-2, 2),
    ("log", ()): _interval(0.5, 4),
    ("sin", ()): _interval(-3, 3),
    ("cos", ()): _interval(-3, 3),
    ("tan", ()): _interval(-1.2, 1.2),
    ("cot", ()): _interval(0.4, 2.7),
    ("sinh", ()): _interval(-2, 2),
    ("cosh", ()): _interval(-2, 2),
    ("tanh", ()): _interval(-2, 2),
    ("coth", ()): _interval(0.4, 3),
    ("arcsin", ()): _interval(-0.8, 0.8),
    ("arccos", ()): _interval(-0.8, 0.8),
    ("arctan", ()): _interval(-3, 3),
    ("arccot", ()): _interval(-3, 3),
    ("arsinh", ()): _interval(-3, 3),
    ("arcosh", ()): _interval(1.3, 4),
    ("artanh", ()): _interval(-0.8, 0.8),
    ("arcoth", ()): _interval(1.3, 4),
    ("sqrt", ()): _interval(0.5, 4),
    ("zhukowskiy", ()): _interval(0.5, 3),
    ("root", (3,)): _interval(0.5, 4),
    ("pow", (3,)): _interval(-2, 2),
    ("pow", (0.5,)): _interval(0.5, 4),
}


def sample_point(draw_null, rng) -> DoubleNumber:
    """A point whose two null coordinates are drawn independently."""
    return null_join(NullPair(draw_null(rng), draw_null(rng)))


@pytest.fixture
def rng():
    return random.Random(20240601)


def rel_close(u: DoubleNumber, v: DoubleNumber, tol: float, scale: float = 1.0) -> bool:
    s = max(scale, abs(v.t), abs(v.x))
    return abs(u.t - v.t) <= tol * s and abs(u.x - v.x) <= tol * s


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
