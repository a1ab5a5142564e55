"""Degree-4 spherical designs.

Moment-tensor verification, an L4/L2 ratio check, numerical design
optimization, the exact rational construction (dense rational sphere points +
an exact-arithmetic feasibility simplex + denominator clearing), and the bridge
from designs to flat-torus immersions.

Floating designs may carry nonuniform weights; rational designs are multisets
(integer multiplicities over a common denominator), mirroring the exact
construction steps.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.optimize

from . import immersions

__all__ = [
    "Design",
    "RationalDesign",
    "MomentTensor4",
    "quartic_moment_tensor",
    "isotropic_moment_tensor",
    "is_degree4_design",
    "design_ratio",
    "rational_sphere_points",
    "exact_lp_feasible",
    "hilbert_rational_design",
    "optimize_design",
    "torus_immersion_from_design",
    "pentagon_design",
    "design_from_json",
    "design_to_json",
    "HeightExhausted",
]


class HeightExhausted(RuntimeError):
    """Raised when the rational construction stays infeasible up to height_max."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True)
class Design:
    """Weighted multiset of unit vectors on S^{n-1} (floating point)."""

    n: int
    points: np.ndarray  # N x n
    weights: np.ndarray  # N, nonneg, sums to 1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError("points must be an N x n array")
        if np.any(np.abs(np.linalg.norm(pts, axis=1) - 1.0) > 1e-12):
            raise ValueError("design points must be unit vectors within 1e-12")
        if w.shape != (pts.shape[0],) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1 within 1e-12")

    @property
    def N(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class RationalDesign:
    """Exact design: rational unit points with integer multiplicities P_i.

    Q = sum(P_i) is the common denominator of the construction.
    """

    n: int
    points: tuple[tuple[Fraction, ...], ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise ValueError("points and multiplicities must have equal length")
        for p in self.points:
            if len(p) != self.n:
                raise ValueError("point dimension mismatch")
            if sum(x * x for x in p) != 1:
                raise ValueError("rational design points must be exactly unit")
        if any(P < 1 for P in self.multiplicities):
            raise ValueError("multiplicities must be positive integers")

    @property
    def Q(self) -> int:
        return sum(self.multiplicities)

    @property
    def N(self) -> int:
        return self.Q

    def to_float(self) -> Design:
        pts = np.array([[float(x) for x in p] for p in self.points])
        Q = self.Q
        w = np.array([P / Q for P in self.multiplicities], dtype=float)
        return Design(n=self.n, points=pts, weights=w)


def multi_indices(n: int, degree: int = 4):
    """All exponent multi-indices alpha with |alpha| = degree, lexicographic."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        alpha = [0] * n
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return out


@dataclass(frozen=True)
class MomentTensor4:
    """Degree-4 moment tensor in monomial multi-index storage (C(n+3,4) entries)."""

    n: int
    entries: dict

    def residual_inf(self, other: "MomentTensor4"):
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return max(abs(self.entries[a] - other.entries[a]) for a in self.entries)


def quartic_moment_tensor(d) -> MomentTensor4:
    """Weighted degree-4 monomial moments; exact for a RationalDesign."""
    if isinstance(d, RationalDesign):
        Q = Fraction(d.Q)
        entries = {}
        for alpha in multi_indices(d.n):
            acc = Fraction(0)
            for p, P in zip(d.points, d.multiplicities):
                term = Fraction(P)
                for x, a in zip(p, alpha):
                    if a:
                        term *= x**a
                acc += term
            entries[alpha] = acc / Q
        return MomentTensor4(n=d.n, entries=entries)
    entries = {}
    for alpha in multi_indices(d.n):
        mono = np.prod(d.points ** np.asarray(alpha, dtype=float), axis=1)
        entries[alpha] = float(d.weights @ mono)
    return MomentTensor4(n=d.n, entries=entries)


def isotropic_moment_tensor(n: int, exact: bool = False) -> MomentTensor4:
    """Degree-4 moments of the uniform measure on S^{n-1}.

    3/(n(n+2)) on pure quartics, 1/(n(n+2)) on the (2,2) mixed monomials, zero
    whenever an exponent is odd.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pure = Fraction(3, n * (n + 2))
    mixed = Fraction(1, n * (n + 2))
    entries = {}
    for alpha in multi_indices(n):
        nz = sorted(a for a in alpha if a)
        if nz == [4]:
            v = pure
        elif nz == [2, 2]:
            v = mixed
        else:
            v = Fraction(0)
        entries[alpha] = v if exact else float(v)
    return MomentTensor4(n=n, entries=entries)


def is_degree4_design(d, tol: float = 1e-10) -> dict:
    """Compare the quartic moments against the isotropic ones.

    Exact zero-test for a RationalDesign; infinity-norm residual otherwise.
    """
    exact = isinstance(d, RationalDesign)
    res = quartic_moment_tensor(d).residual_inf(isotropic_moment_tensor(d.n, exact=exact))
    if exact:
        return {"ok": res == 0, "residual": res}
    return {"ok": res <= tol, "residual": float(res)}


def design_ratio(d, c) -> float:
    """Normalized L4/L2 ratio of the weighted tautological image of c.

    x_i = sqrt(w_i N) <c, s_i>; for a degree-4 design the ratio equals
    (3n/(n+2))^(1/4) for every nonzero c.
    """
    if isinstance(d, RationalDesign):
        d = d.to_float()
    c = np.asarray(c, dtype=float).reshape(-1)
    if not np.any(c):
        raise ValueError("c must be nonzero")
    x = np.sqrt(d.weights * d.N) * (d.points @ c)
    l2 = math.sqrt(float(np.mean(x**2)))
    l4 = float(np.mean(x**4)) ** 0.25
    return l4 / l2


# ---------------------------------------------------------------------------
# rational sphere points

def _rationals_up_to(height: int):
    vals = {Fraction(0)}
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            vals.add(Fraction(p, q))
    return sorted(vals)


def rational_sphere_points(n: int, height: int):
    """Exact rational unit vectors via inverse stereographic projection.

    x = (2a, 1 - |a|^2) / (1 + |a|^2) for all rational a in Q^{n-1} whose
    coordinates have numerator and denominator bounded by ``height``; closed
    under the antipodal map (which preserves exact rationality).
    """
    if n < 1 or height < 1:
        raise ValueError("n >= 1 and height >= 1 required")
    if n == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    vals = _rationals_up_to(height)
    seen = set()
    out = []
    for a in itertools.product(vals, repeat=n - 1):
        na = sum(x * x for x in a)
        denom = 1 + na
        x = tuple(2 * ai / denom for ai in a) + ((1 - na) / denom,)
        for pt in (x, tuple(-xi for xi in x)):
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    return out


# ---------------------------------------------------------------------------
# exact feasibility simplex

def exact_lp_feasible(A, b):
    """Exact nonnegative solution of A p = b over the rationals, or None.

    Phase-1 simplex with Bland's anti-cycling rule.  A is m x k (lists of
    Fraction-coercible entries), b has length m.  Returns a list of k exact
    Fractions with A p = b and p >= 0, or None if infeasible.
    """
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    m, k = len(A), len(A[0]) if A else 0
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau: [A | I | b], basis = artificials; minimize sum of artificials
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [k + i for i in range(m)]
    ncols = k + m
    # reduced cost row for objective sum(artificials): z_j - c_j
    cost = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            cost[j] += T[i][j]
    for j in range(k, ncols):
        cost[j] -= 1
    while True:
        enter = next((j for j in range(ncols) if cost[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][ncols] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded cannot happen in phase 1; defensive
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter
    if cost[ncols] != 0:
        return None
    p = [Fraction(0)] * k
    for i, bi in enumerate(basis):
        if bi < k:
            p[bi] = T[i][ncols]
    return p


def hilbert_rational_design(n: int, height_start: int = 1, height_max: int = 8) -> RationalDesign:
    """Exact rational degree-4 design via the dense-points + feasibility route.

    At each height, solve the exact moment system (all degree-4 monomial rows
    plus the normalization row) over the rational sphere points; on success,
    clear denominators into integer multiplicities.  Heights double on
    infeasibility.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    iso = isotropic_moment_tensor(n, exact=True)
    alphas = multi_indices(n)
    b = [iso.entries[a] for a in alphas] + [Fraction(1)]
    last_residual = None
    height = height_start
    while height <= height_max:
        pts = rational_sphere_points(n, height)
        cols = []
        for s in pts:
            col = []
            for alpha in alphas:
                term = Fraction(1)
                for x, a in zip(s, alpha):
                    if a:
                        term *= x**a
                col.append(term)
            col.append(Fraction(1))
            cols.append(col)
        A = [[cols[j][i] for j in range(len(cols))] for i in range(len(b))]
        p = exact_lp_feasible(A, b)
        if p is not None:
            keep = [(s, w) for s, w in zip(pts, p) if w > 0]
            Q = 1
            for _, w in keep:
                Q = Q * w.denominator // math.gcd(Q, w.denominator)
            mult = [int(w * Q) for _, w in keep]
            return RationalDesign(
                n=n,
                points=tuple(s for s, _ in keep),
                multiplicities=tuple(mult),
            )
        # report how close a least-squares relaxation got, for diagnostics
        Af = np.array([[float(x) for x in row] for row in A])
        bf = np.array([float(x) for x in b])
        sol, *_ = np.linalg.lstsq(Af, bf, rcond=None)
        last_residual = float(np.linalg.norm(Af @ np.clip(sol, 0, None) - bf, ord=np.inf))
        height *= 2
    raise HeightExhausted(
        f"no rational design found for n={n} up to height {height_max}",
        residual=last_residual,
    )


# ---------------------------------------------------------------------------
# floating-point design optimization

def _moment_residual_vec(pts: np.ndarray, alphas, iso_vec: np.ndarray) -> np.ndarray:
    N = pts.shape[0]
    vec = np.array(
        [np.mean(np.prod(pts ** np.asarray(a, dtype=float), axis=1)) for a in alphas]
    )
    return vec - iso_vec


def optimize_design(n: int, N: int, seed: int = 0, iters: int = 40) -> dict:
    """Search for an N-point uniform design on S^{n-1} by residual minimization.

    Gauss-Newton (trust-region least squares) on the moment residual vector
    over points parametrized as normalized raw vectors, with random restarts.
    Returns {"design", "residual", "status"}; NON_CONVERGED is a reported
    status, not an exception.
    """
    if N < n + 1:
        raise ValueError("need N >= n+1 points")
    alphas = multi_indices(n)
    iso = isotropic_moment_tensor(n)
    iso_vec = np.array([iso.entries[a] for a in alphas])

    def residual(v):
        pts = v.reshape(N, n)
        pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        return _moment_residual_vec(pts, alphas, iso_vec)

    rng = np.random.default_rng(seed)
    best_v, best_f = None, np.inf
    for _ in range(iters):
        v0 = rng.standard_normal(N * n)
        res = scipy.optimize.least_squares(
            residual, v0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if res.cost < best_f:
            best_f, best_v = res.cost, res.x
        if best_f < 1e-28:
            break
    pts = best_v.reshape(N, n)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    d = Design(n=n, points=pts, weights=np.full(N, 1.0 / N))
    residual = is_degree4_design(d, tol=np.inf)["residual"]
    status = "OK" if residual < 1e-10 else "NON_CONVERGED"
    return {"design": d, "residual": residual, "status": status}


# ---------------------------------------------------------------------------
# bridge to immersions

def torus_immersion_from_design(d, tol: float = 1e-10) -> immersions.ImmersionSpec:
    """Flat-torus immersion spanned by the design directions.

    One torus factor per design point (amplitude sqrt(w_i), unit row s_i) with
    the default scale sqrt(n/M); the pullback metric is then the identity and
    the measured normal curvature is sqrt(3n/(n+2)).
    """
    check = is_degree4_design(d, tol=tol)
    if not check["ok"]:
        raise ValueError(f"input is not a degree-4 design (residual {check['residual']})")
    if isinstance(d, RationalDesign):
        d = d.to_float()
    return immersions.torus_linear(rows=d.points, weights=d.weights)


def pentagon_design() -> Design:
    """Regular pentagon on the circle: the classic degree-4 cardinality-5 design."""
    ang = 2.0 * math.pi * np.arange(5) / 5.0
    pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return Design(n=2, points=pts, weights=np.full(5, 0.2))


# ---------------------------------------------------------------------------
# JSON wire format

def design_from_json(data):
    """Parse the design file format.

    Rational mode: {"n":2,"points":[["3/5","4/5"],...],"multiplicities":[...]}
    with exact "p/q" strings.  Float mode: decimal points and optional
    "weights" (default uniform).
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    n = int(data["n"])
    if "multiplicities" in data:
        pts = tuple(tuple(Fraction(x) for x in p) for p in data["points"])
        return RationalDesign(n=n, points=pts,
                              multiplicities=tuple(int(m) for m in data["multiplicities"]))
    pts = np.array([[float(x) for x in p] for p in data["points"]], dtype=float)
    w = data.get("weights")
    if w is None:
        w = np.full(len(pts), 1.0 / len(pts))
    return Design(n=n, points=pts, weights=np.asarray(w, dtype=float))


def design_to_json(d) -> dict:
    if isinstance(d, RationalDesign):
        return {
            "n": d.n,
            "points": [[str(x) for x in p] for p in d.points],
            "multiplicities": list(d.multiplicities),
        }
    return {
        "n": d.n,
        "points": [[float(x) for x in p] for p in d.points],
        "weights": [float(w) for w in d.weights],
    }
