"""From spherical designs to very flat tori.

A degree-4 spherical design is a weighted point set on S^(n-1) whose quartic
moments match the uniform measure.  Feeding the design points into a linear
torus immersion produces a flat n-torus in the unit ball whose normal
curvature is sqrt(3n/(n+2)) -- strictly below the sqrt(n) of the Clifford
torus once n > 2, and bounded as n grows.

The script builds designs three ways: the regular pentagon, a numerical
optimizer, and an exact rational construction (integer multiplicities, zero
moment residual in exact arithmetic), then measures the torus curvature.
"""

import math

from curvlab import curvature as cv
from curvlab import designs as dg


def measure(design, label):
    spec = dg.torus_immersion_from_design(design)
    res = cv.normal_curvature_global(spec, n_points=10)
    n = design.n
    target = math.sqrt(3.0 * n / (n + 2))
    print(f"  {label}: curv = {res['sup']:.9f}   "
          f"sqrt(3n/(n+2)) = {target:.9f}")


def main():
    print("=== Pentagon (n=2) ===")
    pent = dg.pentagon_design()
    print(f"  moment residual: {dg.is_degree4_design(pent)['residual']:.2e}")
    measure(pent, "pentagon torus ")

    print()
    print("=== Optimizer (floating points, uniform weights) ===")
    for n, N in ((2, 5), (3, 11)):
        res = dg.optimize_design(n, N, seed=0, iters=10)
        print(f"  n={n}, N={N}: status {res['status']}, "
              f"residual {res['residual']:.2e}")
        measure(res["design"], f"optimized torus")

    print()
    print("=== Exact rational construction ===")
    for n in (2, 3):
        rd = dg.hilbert_rational_design(n)
        names = ", ".join(
            "(" + ", ".join(str(x) for x in p) + ")" for p in rd.points[:3])
        print(f"  n={n}: {len(rd.points)} distinct rational points, "
              f"total multiplicity Q = {rd.Q}")
        print(f"        first points: {names} ...")
        print(f"        exact residual: "
              f"{dg.is_degree4_design(rd)['residual']}")
        measure(rd.to_float(), "rational torus ")

    print()
    print("Whatever path produced the design, the measured curvature lands")
    print("on sqrt(3n/(n+2)); the constant is a property of the quartic")
    print("moment identity, not of any particular point configuration.")


if __name__ == "__main__":
    main()
