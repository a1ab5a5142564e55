"""Curvature engine against closed forms.

Oracles: round spheres (curv = 1/R everywhere), sphere products
(max over factors of 1/R_i), Clifford tori (sqrt(N)), and the algebraic
identities linking II, H, Pi and scalar curvature.
"""

import math

import numpy as np
import pytest

from curvlab import immersions as im
from curvlab import curvature as cv


def fd_at(spec, u):
    return cv.fundamental_data(im.jet2(spec, np.asarray(u, dtype=float)))


def test_sphere_directional_curvature_is_reciprocal_radius():
    fd = fd_at(im.round_sphere(2, 2.0), [1.0, 0.7])
    rng = np.random.default_rng(0)
    for _ in range(20):
        tau = rng.standard_normal(2)
        assert math.isclose(cv.curv_dir(fd, tau), 0.5, rel_tol=1e-12)


@pytest.mark.parametrize("n,R", [(1, 1.0), (2, 0.5), (3, 2.0)])
def test_sphere_normal_curvature(n, R):
    res = cv.normal_curvature_global(im.round_sphere(n, R), n_points=5)
    assert abs(res["sup"] - 1.0 / R) < 1e-9
    assert res["per_point_spread"] < 1e-9


def test_sphere_product_curvature_is_max_reciprocal_radius():
    spec = im.sphere_product([(1, 0.5), (2, 2.0)])
    res = cv.normal_curvature_global(spec, n_points=8)
    assert abs(res["sup"] - 2.0) < 1e-9


def test_two_circle_product_matches_clifford():
    r = 1.0 / math.sqrt(2.0)
    prod = cv.normal_curvature_global(im.sphere_product([(1, r), (1, r)]), n_points=5)
    cliff = cv.normal_curvature_global(im.clifford_torus(2), n_points=5)
    assert abs(prod["sup"] - cliff["sup"]) < 1e-9
    assert abs(cliff["sup"] - math.sqrt(2.0)) < 1e-9


@pytest.mark.parametrize("N", [2, 3, 5])
def test_clifford_curvature(N):
    res = cv.normal_curvature_global(im.clifford_torus(N), n_points=6)
    assert abs(res["sup"] - math.sqrt(N)) < 1e-7


def test_clifford_metric_is_euclidean():
    fd = fd_at(im.clifford_torus(3), [0.2, 1.4, 2.7])
    assert np.allclose(fd.g, np.eye(3), atol=1e-12)


def test_curv_dir_quartic_profile_on_clifford():
    # ||II(t,t)|| = sqrt(N) * sum(t^4)^(1/2) in the flat chart
    N = 4
    fd = fd_at(im.clifford_torus(N), [0.3, 0.9, 1.7, 2.5])
    rng = np.random.default_rng(3)
    for _ in range(50):
        t = rng.standard_normal(N)
        t /= np.linalg.norm(t)
        expect = math.sqrt(N) * math.sqrt(float(np.sum(t**4)))
        assert math.isclose(cv.curv_dir(fd, t), expect, rel_tol=1e-10)


def test_curv_dir_rejects_zero_direction():
    fd = fd_at(im.round_sphere(2, 1.0), [1.0, 0.5])
    with pytest.raises(ValueError):
        cv.curv_dir(fd, [0.0, 0.0])


def test_normal_curvature_at_zero_form():
    # a great circle chart of S^1(1) inside the plane: II = 0 never happens in
    # the catalog, so synthesize a flat jet directly
    J = np.array([[1.0], [0.0]])
    jet = im.Jet2(point=np.zeros(2), jac=J, hess=np.zeros((2, 1, 1)))
    assert cv.normal_curvature_at(cv.fundamental_data(jet)) == 0.0


def test_mean_curvature_of_sphere():
    # trace convention: ||H|| = n/R
    fd = fd_at(im.round_sphere(3, 2.0), [1.1, 0.8, 2.2])
    assert math.isclose(float(np.linalg.norm(cv.mean_curvature(fd))), 1.5,
                        rel_tol=1e-10)


def test_second_form_l2_of_sphere():
    fd = fd_at(im.round_sphere(3, 2.0), [1.1, 0.8, 2.2])
    assert math.isclose(cv.second_form_l2_sq(fd), 3.0 / 4.0, rel_tol=1e-10)


def test_petrunin_pi_closed_forms():
    assert math.isclose(cv.petrunin_pi(fd_at(im.round_sphere(2, 1.0), [1.0, 0.4])),
                        1.0, rel_tol=1e-12)
    # Clifford: Pi = 3N/(N+2)  (II and H norms both N^2)
    N = 3
    fd = fd_at(im.clifford_torus(N), [0.1, 1.0, 2.0])
    assert math.isclose(cv.petrunin_pi(fd), 3.0 * N / (N + 2), rel_tol=1e-12)


def test_petrunin_pi_monte_carlo_on_asymmetric_point():
    # tube points have direction-dependent curvature, a real MC test
    fd = fd_at(im.tube_encircle(1.0, 1, 1, 0.3), [0.7, 2.0])
    cf = cv.petrunin_pi(fd)
    mc = cv.petrunin_pi_mc(fd, n_samples=400_000, seed=11)
    assert abs(mc - cf) / cf < 0.01


def test_scalar_curvature_gauss_on_spheres():
    # Sc(S^n(R)) = n(n-1)/R^2
    for n, R in [(2, 1.0), (3, 2.0), (2, 0.5)]:
        u = np.full(n, 1.0)
        fd = fd_at(im.round_sphere(n, R), u)
        assert math.isclose(cv.scalar_curvature_gauss(fd), n * (n - 1) / R**2,
                            rel_tol=1e-9)


def test_scalar_curvature_formulas_agree_on_random_data():
    rng = np.random.default_rng(5)
    for _ in range(50):
        J = rng.standard_normal((7, 3))
        H = rng.standard_normal((7, 3, 3))
        H = 0.5 * (H + np.swapaxes(H, 1, 2))
        fd = cv.fundamental_data(im.Jet2(point=np.zeros(7), jac=J, hess=H))
        a = cv.scalar_curvature_gauss(fd)
        b = cv.scalar_curvature_petrunin(fd)
        assert abs(a - b) < 1e-9 * max(1.0, abs(a))


def test_clifford_is_scalar_flat():
    fd = fd_at(im.clifford_torus(2), [0.4, 1.3])
    assert abs(cv.scalar_curvature_gauss(fd)) < 1e-10


def test_focal_radius_reciprocity():
    assert math.isclose(cv.focal_radius(2.0), 0.5)
    with pytest.raises(ValueError):
        cv.focal_radius(0.0)


def test_spherical_curvature():
    # curvature 1 inside the unit sphere means a great sphere: zero intrinsic
    assert cv.spherical_curvature(1.0, 1.0) == 0.0
    assert math.isclose(cv.spherical_curvature(math.sqrt(2.0), 1.0), 1.0,
                        rel_tol=1e-12)
    with pytest.raises(ValueError):
        cv.spherical_curvature(0.3, 1.0)


def test_gauss_map_tilt_matches_normal_curvature():
    # the tangent-plane tilt rate equals curv on a round sphere
    spec = im.round_sphere(2, 2.0)
    got = cv.gauss_map_diff_norm(spec, [1.2, 0.8], n_dirs=64)
    assert abs(got - 0.5) < 1e-4


def test_determinism_same_seed():
    spec = im.clifford_torus(3)
    a = cv.normal_curvature_global(spec, n_points=4, seed=42)
    b = cv.normal_curvature_global(spec, n_points=4, seed=42)
    assert a == b


def test_rejects_high_intrinsic_dimension():
    fd = fd_at(im.clifford_torus(7), np.linspace(0.1, 2.0, 7))
    with pytest.raises(ValueError):
        cv.normal_curvature_at(fd)
