"""Panel convergence of closed-contour integrals of holomorphic maps.

On a circle the trapezoid rule sees a smooth periodic integrand and the
error falls to roundoff almost at once; on a polygon each edge is a
non-periodic interval and the error falls by 4 per halving.
"""

import math

from splitplane.algebra import DoubleNumber
from splitplane.contour import circle, contour_integral, polygon
from splitplane.parser import parse_expression

MAPS = ("h^2", "exp(h)", "sin(h)", "exp(h*h)")
TRIANGLE = [DoubleNumber(0, 0), DoubleNumber(1, 0.2), DoubleNumber(0.3, 0.9)]


def size(v):
    return math.hypot(v.t, v.x)


def main():
    print("unit circle, |oint F dh| by panel count")
    counts = [8, 16, 32, 64, 128, 1024, 2048, 4096]
    print("F".ljust(10) + "".join(f"{n:>10d}" for n in counts))
    for src in MAPS:
        F = parse_expression(src)
        errs = [size(contour_integral(F, circle(DoubleNumber(0, 0), 1.0, n))) for n in counts]
        print(src.ljust(10) + "".join(f"{e:10.1e}" for e in errs))

    print("\ntriangle, |oint F dh| by panels per edge, and ratio to the next halving")
    counts = [16, 32, 64, 128, 256]
    for src in MAPS:
        F = parse_expression(src)
        errs = [size(contour_integral(F, polygon(TRIANGLE, n))) for n in counts]
        ratios = [a / b for a, b in zip(errs[:-1], errs[1:])]
        print(src.ljust(10) + "".join(f"{e:10.1e}" for e in errs) + "   " + " ".join(f"{r:.3f}" for r in ratios))


if __name__ == "__main__":
    main()
