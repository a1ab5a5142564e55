"""Discrete curve inequalities on polygonal data.

Four classical facts, each checked on concrete polygons:
  * closed curves turn by at least 2*pi, with equality exactly for planar
    convex curves;
  * straightening a convex arc pushes its endpoints apart (arm lemma);
  * a curve with curvature at most 1/R has chord at least 2R sin(L/2R),
    with circular arcs as the equality case (bow inequality);
  * total curvature equals the average critical-point count of random
    linear height functions (an integral-geometry identity).
"""

import math

import numpy as np

from curvlab import curves as cu


def main():
    print("=== Total curvature of closed polygons ===")
    sq = cu.PolyCurve(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float),
                      closed=True)
    rng = np.random.default_rng(3)
    skew = cu.PolyCurve(rng.standard_normal((8, 3)), closed=True)
    for label, c in (("unit square ", sq), ("random skew octagon", skew)):
        res = cu.fenchel_check(c)
        print(f"  {label}: total = {res['total_curvature']:.6f}  "
              f"slack over 2*pi = {res['slack']:+.6f}  "
              f"convex planar = {res['convex_planar']}")

    print()
    print("=== Inscribed helix, refining ladder ===")
    exact = cu.helix_total_curvature(1.0, math.pi, 2.0)
    res = cu.discrete_total_curvature_convergence(cu.helix(), exact)
    print(f"  analytic total curvature: {exact:.6f}")
    for n, err in zip(res["ns"], res["errors"]):
        print(f"  {n:4d} vertices: span-corrected error {err:.5f}")
    print("  halving the mesh quarters the error (second-order).")

    print()
    print("=== Arm lemma ===")
    p, q = cu.random_arm_instance(k=6, ambient_n=3, seed=1)
    res = cu.arm_check(q, p)
    print(f"  planar convex arc chord: {res['dist_p']:.6f}")
    print(f"  straightened spatial arm: {res['dist_q']:.6f}  "
          f"(slack {res['slack']:+.6f}, hypotheses ok: "
          f"{res['hypotheses_ok']})")

    print()
    print("=== Bow inequality ===")
    arc = cu.circular_arc(R=1.0, arc_length=2.5, n=800)
    res = cu.bow_check(arc, R=1.0)
    print(f"  circular arc, L=2.5, R=1: chord = {res['chord']:.8f}  "
          f"bound 2R sin(L/2R) = {res['bound']:.8f}  "
          f"equality = {res['equality']}")
    wig = cu.random_bounded_curve(R=1.0, length=4.0, n=200, seed=5)
    res = cu.bow_check(wig, R=1.0)
    print(f"  random bounded curve:     chord = {res['chord']:.8f}  "
          f"bound = {res['bound']:.8f}  slack = {res['slack']:+.6f}")

    print()
    print("=== Height-function counting ===")
    circle = cu.circle_curve(1.0).polygon(256)
    res = cu.crofton_check(circle, n_dirs=50_000, seed=0)
    print(f"  circle: 4*pi*E[#critical points] = {res['mc_estimate']:.4f}  "
          f"4*(total curvature) = {res['target']:.4f}  "
          f"rel err = {res['rel_err']:.2%}")


if __name__ == "__main__":
    main()
