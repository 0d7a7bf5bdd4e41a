"""Cutoff scaling of the regularised residue and Cauchy formula.

Prints the crossing-contour residue of 1/(h - h0) against the angle
cutoff, then the Cauchy-formula error against r_inner next to the
leading-order model.
"""

import argparse

import numpy as np

from splitplane.algebra import DoubleNumber
from splitplane.contour import RegularizationParams, cauchy_error_model, cauchy_value, power_residue
from splitplane.holomorphy import derivative
from splitplane.parser import parse_expression


def main():
    ap = argparse.ArgumentParser(description="residue and Cauchy cutoff scaling")
    ap.add_argument("--expr", default="exp(h)")
    ap.add_argument("--h0", type=float, nargs=2, default=(0.5, 0.1))
    args = ap.parse_args()

    # beyond Psi ~ 17, cosh and sinh agree to machine precision and ray nodes sit on the cone
    psis = np.array([1.0, 2.0, 5.0, 10.0, 15.0])
    vals = np.array([power_residue(-1, DoubleNumber(0, 0), RegularizationParams(p, 1e-8)).x for p in psis])
    slope = np.polyfit(psis, vals, 1)[0]
    print("Psi      Im oint dh/h      4 Psi")
    for p, v in zip(psis, vals):
        print(f"{p:5.1f}  {v:16.10f}  {4 * p:8.1f}")
    print(f"fitted slope {slope:.10f}\n")

    F = parse_expression(args.expr)
    h0 = DoubleNumber(*args.h0)
    exact = F(h0)
    fp = derivative(F, h0)
    print(f"F = {F}, h0 = {h0}, F(h0) = {exact}")
    print("Psi  r_inner   |error|      |model|")
    for psi in (2.0, 5.0):
        for r in (1e-4, 1e-6, 1e-8):
            reg = RegularizationParams(psi, r)
            err = cauchy_value(F, h0, reg) - exact
            model = cauchy_error_model(fp, reg)
            print(f"{psi:3.0f}  {r:7.0e}  {np.hypot(err.t, err.x):.4e}  {np.hypot(model.t, model.x):.4e}")


if __name__ == "__main__":
    main()
