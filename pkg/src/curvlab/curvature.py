"""Numerical differential-geometry engine.

Induced metric, second fundamental form, normal curvature (directional, at a
point, and global over sampled basepoints), mean curvature, the degree-4
averaged curvature invariant Pi with its Monte-Carlo cross-check, Gauss-formula
scalar curvature, focal radius, and the Gauss-map finite-difference cross-check.

All functions are pure; Monte-Carlo routines are deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .immersions import ImmersionSpec, Jet2, jet2, sample_params

__all__ = [
    "FundamentalData",
    "fundamental_data",
    "curv_dir",
    "normal_curvature_at",
    "normal_curvature_global",
    "mean_curvature",
    "petrunin_pi",
    "petrunin_pi_mc",
    "scalar_curvature_gauss",
    "scalar_curvature_petrunin",
    "second_form_l2_sq",
    "focal_radius",
    "spherical_curvature",
    "gauss_map_diff_norm",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 0xC0FFEE

_ZERO_FORM_TOL = 1e-14


@dataclass(frozen=True)
class FundamentalData:
    """First and second fundamental forms of an immersion at a point.

    g is the induced metric J^T J;  II[:, i, j] is the ambient-vector-valued
    normal projection of the Hessian;  frame is an ambient-orthonormal basis of
    the tangent plane (columns);  whitener maps g-orthonormal coordinates to
    parameter coordinates (g^{-1/2}).
    """

    g: np.ndarray
    II: np.ndarray
    frame: np.ndarray
    whitener: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.g.shape[0]

    def whitened_form(self) -> np.ndarray:
        """II in g-orthonormal tangent coordinates, shape N x n x n."""
        W = self.whitener
        return np.einsum("cij,ia,jb->cab", self.II, W, W)


def fundamental_data(jet: Jet2) -> FundamentalData:
    J, H = jet.jac, jet.hess
    g = J.T @ J
    evals, evecs = np.linalg.eigh(g)
    if evals[0] <= 1e-18 * max(evals[-1], 1.0):
        raise ValueError("rank-deficient Jacobian: not an immersion point")
    # tangential projector via a thin QR frame; P_perp = I - Q Q^T
    Q, _ = np.linalg.qr(J)
    II = H - np.einsum("ca,ab,bij->cij", Q, Q.T, H)
    whitener = evecs @ np.diag(evals**-0.5) @ evecs.T  # g^{-1/2}
    return FundamentalData(g=g, II=II, frame=Q, whitener=whitener)


def curv_dir(fd: FundamentalData, tau) -> float:
    """||II(t, t)|| for the g-unit direction t along tau."""
    tau = np.asarray(tau, dtype=float).reshape(-1)
    q = float(tau @ fd.g @ tau)
    if q <= 0.0 or not np.isfinite(q):
        raise ValueError("tangent direction must be nonzero")
    t = tau / math.sqrt(q)
    v = np.einsum("cij,i,j->c", fd.II, t, t)
    return float(np.linalg.norm(v))


# ---------------------------------------------------------------------------
# direction search

def _direction_grid(n: int, density: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.array([[1.0]])
    if n == 2:
        ang = np.linspace(0.0, math.pi, density, endpoint=False)
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    if n == 3:
        # Fibonacci lattice on S^2
        k = np.arange(density)
        phi = math.pi * (3.0 - math.sqrt(5.0)) * k
        z = 1.0 - 2.0 * (k + 0.5) / density
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    pts = rng.standard_normal((density, n))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _polish(M: np.ndarray, w: np.ndarray, iters: int, tol: float):
    """Projected gradient ascent for F(w) = sum_c (w^T M_c w)^2 on the sphere."""
    def F(x):
        q = np.einsum("cij,i,j->c", M, x, x)
        return float(q @ q)
    val = F(w)
    step = 0.1
    for _ in range(iters):
        q = np.einsum("cij,i,j->c", M, w, w)
        grad = 4.0 * np.einsum("c,cij,j->i", q, M, w)
        grad -= (grad @ w) * w
        gn = np.linalg.norm(grad)
        if gn < 1e-16:
            break
        improved = False
        while step > 1e-18:
            w_new = w + step * grad / gn
            w_new /= np.linalg.norm(w_new)
            v_new = F(w_new)
            if v_new > val:
                w, val = w_new, v_new
                step *= 2.0
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return w, val


def normal_curvature_at(
    fd: FundamentalData,
    grid_density: int | None = None,
    polish_iters: int = 120,
    tol: float = 1e-9,
    seed: int = DEFAULT_SEED,
    return_direction: bool = False,
):
    """max over g-unit tangent directions of ||II(t,t)||.

    Dense direction sampling followed by projected-gradient polish from the best
    candidates.  The returned value is a certified lower bound of the true sup.
    """
    n = fd.n
    if n > 6:
        raise ValueError("direction search supports intrinsic dimension <= 6")
    M = fd.whitened_form()
    if np.linalg.norm(M) < _ZERO_FORM_TOL:
        if return_direction:
            w0 = np.zeros(n)
            w0[0] = 1.0
            return 0.0, fd.whitener @ w0
        return 0.0
    if grid_density is None:
        grid_density = 10_000 if n <= 3 else 100_000
    rng = np.random.default_rng(seed)
    dirs = _direction_grid(n, grid_density, rng)
    vals = np.einsum("si,cij,sj->sc", dirs, M, dirs)
    F = np.einsum("sc,sc->s", vals, vals)
    order = np.argsort(F)[::-1]
    n_starts = min(8, len(order))
    best_val, best_w = -1.0, dirs[order[0]]
    for k in range(n_starts):
        w, v = _polish(M, dirs[order[k]].copy(), polish_iters, tol)
        if v > best_val:
            best_val, best_w = v, w
    curv = math.sqrt(best_val) if best_val > 0 else 0.0  # F = ||II(w,w)||^2 = curv^2
    if return_direction:
        return float(curv), fd.whitener @ best_w
    return float(curv)


def normal_curvature_global(
    spec: ImmersionSpec,
    n_points: int = 20,
    seed: int = DEFAULT_SEED,
    grid_density: int | None = None,
    polish_iters: int = 120,
) -> dict:
    """Supremum of the pointwise normal curvature over sampled basepoints."""
    rng = np.random.default_rng(seed)
    us = sample_params(spec, n_points, rng)
    vals = []
    for u in us:
        fd = fundamental_data(jet2(spec, u))
        vals.append(
            normal_curvature_at(fd, grid_density=grid_density,
                                polish_iters=polish_iters, seed=seed)
        )
    vals = np.asarray(vals)
    return {
        "sup": float(vals.max()),
        "per_point_spread": float(vals.max() - vals.min()),
        "n_points": int(n_points),
    }


# ---------------------------------------------------------------------------
# traces and scalar curvature

def mean_curvature(fd: FundamentalData) -> np.ndarray:
    """Unnormalized trace of II over a g-orthonormal frame (ambient vector).

    The sum convention (not the average) is what balances the Gauss formula:
    Sc(S^n(R)) = n(n-1)/R^2 comes out exactly.
    """
    ginv = fd.whitener @ fd.whitener
    return np.einsum("cij,ij->c", fd.II, ginv)


def second_form_l2_sq(fd: FundamentalData) -> float:
    """sum_{i,j} ||II(e_i, e_j)||^2 over a g-orthonormal frame."""
    M = fd.whitened_form()
    return float(np.einsum("cij,cij->", M, M))


def petrunin_pi(fd: FundamentalData) -> float:
    """Average of ||II(t,t)||^2 over uniform g-unit tangent directions (closed form)."""
    n = fd.n
    h2 = float(np.dot(mean_curvature(fd), mean_curvature(fd)))
    return 2.0 / (n * (n + 2)) * (second_form_l2_sq(fd) + 0.5 * h2)


def petrunin_pi_mc(fd: FundamentalData, n_samples: int = 100_000,
                   seed: int = DEFAULT_SEED) -> float:
    """Monte-Carlo estimate of the same average; cross-validates the closed form."""
    rng = np.random.default_rng(seed)
    M = fd.whitened_form()
    w = rng.standard_normal((n_samples, fd.n))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    vals = np.einsum("si,cij,sj->sc", w, M, w)
    return float(np.mean(np.einsum("sc,sc->s", vals, vals)))


def scalar_curvature_gauss(fd: FundamentalData, sc_ambient_n: float = 0.0) -> float:
    """Gauss-formula scalar curvature: Sc_|n + ||H||^2 - ||II||_l2^2."""
    H = mean_curvature(fd)
    return float(sc_ambient_n + H @ H - second_form_l2_sq(fd))


def scalar_curvature_petrunin(fd: FundamentalData, sc_ambient_n: float = 0.0) -> float:
    """Equivalent form Sc_|n + (3/2)||H||^2 - (n(n+2)/2) Pi."""
    n = fd.n
    H = mean_curvature(fd)
    return float(sc_ambient_n + 1.5 * (H @ H) - 0.5 * n * (n + 2) * petrunin_pi(fd))


def focal_radius(curv: float) -> float:
    """Euclidean reciprocity: the focal radius is 1/curv."""
    if curv <= 0:
        raise ValueError("curvature must be positive")
    return 1.0 / curv


def spherical_curvature(curv_euclid: float, R_sphere: float) -> float:
    """Curvature inside S^{N-1}(R) from the Euclidean one (Pythagorean relation)."""
    if R_sphere <= 0:
        raise ValueError("sphere radius must be positive")
    inv = 1.0 / R_sphere
    if curv_euclid < inv * (1.0 - 1e-12):
        raise ValueError("Euclidean curvature below 1/R: not contained in that sphere")
    return math.sqrt(max(0.0, curv_euclid**2 - inv * inv))


def gauss_map_diff_norm(spec: ImmersionSpec, u, h: float = 1e-4,
                        n_dirs: int = 256, seed: int = DEFAULT_SEED) -> float:
    """Finite-difference operator norm of the tangent-plane variation.

    For each g-unit direction, the rate of tilt of span(jac) is the largest
    principal angle between nearby tangent planes over the arclength step.
    The sup over directions matches the normal curvature.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    u = np.asarray(u, dtype=float).reshape(-1)
    fd = fundamental_data(jet2(spec, u))
    n = fd.n
    rng = np.random.default_rng(seed)
    dirs = _direction_grid(n, n_dirs, rng)
    _, tau_best = normal_curvature_at(fd, return_direction=True, seed=seed)
    candidates = [fd.whitener @ w for w in dirs] + [tau_best]
    best = 0.0
    for tau in candidates:
        # tau is g-unit, so u +- h*tau moves h in arclength to first order
        Jp = jet2(spec, u + h * tau).jac
        Jm = jet2(spec, u - h * tau).jac
        angles = scipy.linalg.subspace_angles(Jp, Jm)
        if angles.size:
            best = max(best, float(angles.max()) / (2.0 * h))
    return best
