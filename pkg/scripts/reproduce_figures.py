"""Write the coordinate-net images and wave slices as SVG/CSV files.

    python scripts/reproduce_figures.py --out figures
"""

import argparse
import math
from pathlib import Path

from splitplane.algebra import Region
from splitplane.export import polylines_svg, rows_csv
from splitplane.grid import GridSpec, map_grid
from splitplane.parser import parse_expression
from splitplane.wave import log_circle_solution, time_slice

HALF_PI = math.pi / 2

FIGURES = {
    "identity_net": ("h", GridSpec((-1, 1), (-1, 1))),
    "exp_net": ("exp(h)", GridSpec((-1, 1), (-1.5, 1.5))),
    "log_net": ("log(h)", GridSpec((0.2, 3), (-2.5, 2.5), n_t=12, n_x=11)),
    "log_polar_net": ("log(h)", GridSpec((0.5, 3), (-1.5, 1.5), kind="polar")),
    "square_net": ("h^2", GridSpec((-1, 1), (-1, 1))),
    "sin_square": ("sin(h)", GridSpec((-HALF_PI, HALF_PI), (-HALF_PI, HALF_PI))),
    "sinh_net": ("sinh(h)", GridSpec((-1.5, 1.5), (-1.5, 1.5))),
    "zhukowskiy_polar": ("zhukowskiy(h)", GridSpec((0.3, 3), (-1.2, 1.2), n_t=10, kind="polar")),
    "zhukowskiy_polar_II": (
        "zhukowskiy(h)",
        GridSpec((0.3, 3), (-1.2, 1.2), n_t=10, kind="polar", region=Region.QUADRANT_II),
    ),
    "homographic_net": ("(2*h+1j)/(1-1j*h)", GridSpec((-0.8, 0.8), (-0.8, 0.8), samples_per_line=201)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name, (src, grid) in FIGURES.items():
        lines = map_grid(parse_expression(src), grid)
        (out / f"{name}.svg").write_text(polylines_svg(lines))
        print(f"{name}.svg  {src}  ({sum(len(pl.points) for pl in lines)} points)")

    sol = log_circle_solution(1.0, 1.0)
    rows = [(t, x, phi) for t in (1, 2, 3, 4) for x, phi in time_slice(sol, t, (-3.99, 3.99), 161)]
    (out / "wave_slices.csv").write_text(rows_csv(("t", "x", "phi"), rows))
    print(f"wave_slices.csv  F = {sol.F}")


if __name__ == "__main__":
    main()
