"""Spherical designs: moment oracles, the exact rational construction, and the
torus bridge.

The isotropic moment constants are validated against an independent
double-factorial oracle for E[x^alpha] over the uniform sphere measure:

    E[prod x_i^(2a_i)] = prod (2a_i - 1)!! / prod_{j=0}^{|a|-1} (n + 2j).
"""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from curvlab import designs as dg
from curvlab import immersions as im
from curvlab import curvature as cv


def sphere_moment_oracle(n, alpha):
    """Uniform-measure moment of the monomial x^alpha on S^{n-1}, exact."""
    if any(a % 2 for a in alpha):
        return Fraction(0)
    num = Fraction(1)
    for a in alpha:
        for odd in range(1, a, 2):
            num *= odd
    half = sum(alpha) // 2
    den = Fraction(1)
    for j in range(half):
        den *= n + 2 * j
    return num / den


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_isotropic_moments_match_oracle(n):
    iso = dg.isotropic_moment_tensor(n, exact=True)
    for alpha, v in iso.entries.items():
        assert v == sphere_moment_oracle(n, alpha), alpha


def test_isotropic_values_small_n():
    assert dg.isotropic_moment_tensor(1, exact=True).entries[(4,)] == 1
    iso2 = dg.isotropic_moment_tensor(2, exact=True)
    assert iso2.entries[(4, 0)] == Fraction(3, 8)
    iso3 = dg.isotropic_moment_tensor(3, exact=True)
    assert iso3.entries[(4, 0, 0)] == Fraction(1, 5)
    assert iso3.entries[(2, 2, 0)] == Fraction(1, 15)


def test_pentagon_moments():
    mt = dg.quartic_moment_tensor(dg.pentagon_design())
    assert abs(mt.entries[(4, 0)] - 3.0 / 8.0) < 1e-14
    assert abs(mt.entries[(2, 2)] - 1.0 / 8.0) < 1e-14
    assert abs(mt.entries[(3, 1)]) < 1e-14


def test_pentagon_moments_against_root_of_unity_sums():
    # direct trigonometric oracle
    angs = [2 * math.pi * k / 5 for k in range(5)]
    m40 = sum(math.cos(a) ** 4 for a in angs) / 5
    m22 = sum(math.cos(a) ** 2 * math.sin(a) ** 2 for a in angs) / 5
    mt = dg.quartic_moment_tensor(dg.pentagon_design())
    assert abs(mt.entries[(4, 0)] - m40) < 1e-14
    assert abs(mt.entries[(2, 2)] - m22) < 1e-14


def cross_design():
    """{+-e1, +-e2}: unit points but NOT a degree-4 design."""
    pts = np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]])
    return dg.Design(n=2, points=pts, weights=np.full(4, 0.25))


def test_cross_is_not_a_design():
    mt = dg.quartic_moment_tensor(cross_design())
    assert abs(mt.entries[(4, 0)] - 0.5) < 1e-15
    res = dg.is_degree4_design(cross_design())
    assert not res["ok"]
    assert abs(res["residual"] - 1.0 / 8.0) < 1e-12


def test_s0_design():
    d = dg.Design(n=1, points=np.array([[1.0], [-1.0]]), weights=np.array([0.5, 0.5]))
    assert dg.quartic_moment_tensor(d).entries[(4,)] == 1.0
    assert dg.is_degree4_design(d)["ok"]


def test_design_ratio_constant_iff_design():
    rng = np.random.default_rng(2)
    pent = dg.pentagon_design()
    target = (3.0 * 2 / 4) ** 0.25
    vals = []
    for _ in range(100):
        c = rng.standard_normal(2)
        vals.append(dg.design_ratio(pent, c))
    assert max(vals) - min(vals) < 1e-12
    assert abs(vals[0] - target) < 1e-12
    assert abs(dg.design_ratio(cross_design(), [1.0, 1.0]) - target) > 0.05
    with pytest.raises(ValueError):
        dg.design_ratio(pent, [0.0, 0.0])


def test_rotation_invariance():
    rng = np.random.default_rng(4)
    q, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    pent = dg.pentagon_design()
    rotated = dg.Design(n=2, points=pent.points @ q.T, weights=pent.weights)
    assert dg.is_degree4_design(rotated, tol=1e-10)["ok"]


# ---------------------------------------------------------------------------
# rational machinery

def test_rational_sphere_points_exactly_unit():
    for n, h in [(2, 1), (2, 2), (3, 2)]:
        pts = dg.rational_sphere_points(n, h)
        for p in pts:
            assert sum(x * x for x in p) == 1


def test_rational_sphere_points_membership():
    pts1 = set(dg.rational_sphere_points(2, 1))
    for expect in [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)),
                   (Fraction(0), Fraction(-1))]:
        assert expect in pts1
    pts2 = set(dg.rational_sphere_points(2, 2))
    assert (Fraction(4, 5), Fraction(-3, 5)) in pts2


def test_rational_sphere_points_height_monotone():
    a = set(dg.rational_sphere_points(2, 1))
    b = set(dg.rational_sphere_points(2, 2))
    assert a <= b


def test_exact_lp_trivial_cases():
    assert dg.exact_lp_feasible([[1]], [1]) == [Fraction(1)]
    # b = 1/3 on the segment [0, 1]: barycentric weights 2/3, 1/3
    p = dg.exact_lp_feasible([[0, 1], [1, 1]], [Fraction(1, 3), 1])
    assert p is not None and sum(p) == 1 and p[1] == Fraction(1, 3)
    assert dg.exact_lp_feasible([[1, 2]], [-1]) is None  # cone misses b


def test_exact_lp_solution_is_exact():
    rng = np.random.default_rng(0)
    A = [[Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
          for _ in range(8)] for _ in range(3)]
    # b inside the cone: a known nonnegative combination
    w = [Fraction(int(rng.integers(0, 3))) for _ in range(8)]
    b = [sum(A[i][j] * w[j] for j in range(8)) for i in range(3)]
    p = dg.exact_lp_feasible(A, b)
    assert p is not None
    for i in range(3):
        assert sum(A[i][j] * p[j] for j in range(8)) == b[i]
    assert all(x >= 0 for x in p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hilbert_rational_design(n):
    rd = dg.hilbert_rational_design(n)
    res = dg.is_degree4_design(rd)
    assert res["ok"] and res["residual"] == 0
    assert all(P >= 1 for P in rd.multiplicities)
    assert sum(rd.multiplicities) == rd.Q


def test_hilbert_height_exhausted():
    with pytest.raises(dg.HeightExhausted) as exc:
        dg.hilbert_rational_design(3, height_start=1, height_max=1)
    assert exc.value.residual is not None


def test_degree2_consequence():
    # trace contraction: sum w_i s_i s_i^T = I/n for every accepted design
    for d in [dg.pentagon_design(), dg.hilbert_rational_design(2).to_float()]:
        gram = np.einsum("i,ia,ib->ab", d.weights, d.points, d.points)
        assert np.allclose(gram, np.eye(d.n) / d.n, atol=1e-12)


# ---------------------------------------------------------------------------
# optimizer

def test_optimize_design_five_points_on_circle():
    res = dg.optimize_design(2, 5, seed=1, iters=20)
    assert res["status"] == "OK"
    assert res["residual"] < 1e-12


def test_optimize_design_four_points_on_circle():
    # Four points at 0, 45, 90, 135 degrees match every quartic moment
    # (squaring the angles gives the fourth roots of unity), so the
    # quartic system is solvable with N=4 even though a through-degree-4
    # design needs five points.
    res = dg.optimize_design(2, 4, seed=1, iters=12)
    assert res["status"] == "OK"
    assert res["residual"] < 1e-10


def test_three_points_at_sixty_degrees_solve_quartic_system():
    ang = np.array([0.0, np.pi / 3, 2 * np.pi / 3])
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    d = dg.Design(n=2, points=pts, weights=np.full(3, 1 / 3))
    assert dg.is_degree4_design(d, tol=1e-14)["ok"]


def test_optimize_design_three_points_solve_circle_case():
    res = dg.optimize_design(2, 3, seed=1, iters=12)
    assert res["status"] == "OK"


def test_optimize_design_eleven_points_on_sphere():
    res = dg.optimize_design(3, 11, seed=0, iters=10)
    assert res["status"] == "OK"
    assert res["residual"] < 1e-10


def test_optimize_design_four_points_on_sphere_cannot_converge():
    # On S^2 the quartic system needs more than four points; the residual
    # stays bounded away from zero across restarts.
    res = dg.optimize_design(3, 4, seed=1, iters=8)
    assert res["status"] == "NON_CONVERGED"
    assert res["residual"] > 1e-3


def test_optimize_design_needs_enough_points():
    with pytest.raises(ValueError):
        dg.optimize_design(3, 3)


# ---------------------------------------------------------------------------
# torus bridge

def test_torus_from_pentagon_measures_design_curvature():
    spec = dg.torus_immersion_from_design(dg.pentagon_design())
    rng = np.random.default_rng(9)
    for u in im.sample_params(spec, 5, rng):
        fd = cv.fundamental_data(im.jet2(spec, u))
        assert np.allclose(fd.g, np.eye(2), atol=1e-12)
        assert abs(cv.normal_curvature_at(fd) - math.sqrt(1.5)) < 1e-9


def test_torus_rejects_non_design():
    with pytest.raises(ValueError):
        dg.torus_immersion_from_design(cross_design())


# ---------------------------------------------------------------------------
# serialization

def test_design_json_round_trip_rational():
    rd = dg.hilbert_rational_design(2)
    again = dg.design_from_json(json.dumps(dg.design_to_json(rd)))
    assert isinstance(again, dg.RationalDesign)
    assert again == rd


def test_design_json_round_trip_float():
    d = dg.pentagon_design()
    again = dg.design_from_json(dg.design_to_json(d))
    assert np.allclose(again.points, d.points)
    assert np.allclose(again.weights, d.weights)


def test_design_json_uniform_default():
    d = dg.design_from_json({"n": 2, "points": [[1.0, 0.0], [0.0, 1.0]]})
    assert np.allclose(d.weights, 0.5)
