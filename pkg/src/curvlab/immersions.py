"""Catalog of explicitly parametrized immersions with analytic 2-jets.

Every immersion is described by an :class:`ImmersionSpec` and evaluated through
``evaluate`` / ``jet2``.  The catalog covers round spheres, products of spheres,
Clifford tori, linear sub-tori of Clifford tori (the design-torus construction),
quadratic Veronese embeddings of projective spaces, and tube encirclings of
round spheres.

Parameter domains are unbounded; angle coordinates wrap.  Hyperspherical charts
are singular at the poles (``sin`` of a leading angle vanishing), so samplers
keep away from chart boundaries.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ImmersionSpec",
    "Jet2",
    "round_sphere",
    "sphere_product",
    "clifford_torus",
    "torus_linear",
    "veronese",
    "tube_encircle",
    "evaluate",
    "jet2",
    "jet2_fd",
    "containment_radius",
    "declared_containment_radius",
    "sample_params",
    "spec_from_json",
    "spec_to_json",
]

_ROW_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Jet2:
    """2-jet of a parametrization: position, Jacobian and Hessian stack.

    ``point`` is in R^N, ``jac`` is N x n and ``hess`` is N x n x n with
    ``hess[:, i, j] == hess[:, j, i]``.
    """

    point: np.ndarray
    jac: np.ndarray
    hess: np.ndarray

    def validate(self, sym_tol: float = 1e-10, rank_rtol: float = 1e-9) -> None:
        if not np.allclose(self.hess, np.swapaxes(self.hess, 1, 2), atol=sym_tol):
            raise ValueError("Hessian stack is not symmetric in the parameter indices")
        sv = np.linalg.svd(self.jac, compute_uv=False)
        if sv[-1] <= rank_rtol * sv[0]:
            raise ValueError("Jacobian is rank deficient: not an immersion point")


@dataclass(frozen=True)
class ImmersionSpec:
    """Symbolic description of a catalog immersion (kind plus parameters)."""

    kind: str
    n: int | None = None
    R: float | None = None
    factors: tuple[tuple[int, float], ...] | None = None
    N: int | None = None
    rows: tuple[tuple[float, ...], ...] | None = None
    scale: float | None = None
    weights: tuple[float, ...] | None = None
    m: int | None = None
    base_r: float | None = None
    n1: int | None = None
    n2: int | None = None
    rho: float | None = None

    @property
    def intrinsic_dim(self) -> int:
        if self.kind == "round_sphere":
            return self.n
        if self.kind == "sphere_product":
            return sum(ni for ni, _ in self.factors)
        if self.kind == "clifford_torus":
            return self.N
        if self.kind == "torus_linear":
            return len(self.rows[0])
        if self.kind == "veronese":
            return self.m
        if self.kind == "tube":
            return self.n1 + self.n2
        raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def ambient_dim(self) -> int:
        if self.kind == "round_sphere":
            return self.n + 1
        if self.kind == "sphere_product":
            return sum(ni + 1 for ni, _ in self.factors)
        if self.kind == "clifford_torus":
            return 2 * self.N
        if self.kind == "torus_linear":
            return 2 * len(self.rows)
        if self.kind == "veronese":
            return (self.m + 1) * (self.m + 2) // 2 - 1
        if self.kind == "tube":
            return self.n1 + 1 + self.n2
        raise ValueError(f"unknown kind {self.kind!r}")


# ---------------------------------------------------------------------------
# constructors


def round_sphere(n: int, R: float) -> ImmersionSpec:
    if n < 1 or R <= 0:
        raise ValueError("round sphere needs n >= 1 and R > 0")
    return ImmersionSpec(kind="round_sphere", n=int(n), R=float(R))


def sphere_product(factors) -> ImmersionSpec:
    factors = tuple((int(ni), float(Ri)) for ni, Ri in factors)
    if not factors or any(ni < 1 or Ri <= 0 for ni, Ri in factors):
        raise ValueError("each factor needs n_i >= 1 and R_i > 0")
    return ImmersionSpec(kind="sphere_product", factors=factors)


def clifford_torus(N: int) -> ImmersionSpec:
    if N < 1:
        raise ValueError("clifford torus needs N >= 1")
    return ImmersionSpec(kind="clifford_torus", N=int(N))


def torus_linear(rows, scale: float | None = None, weights=None) -> ImmersionSpec:
    """Linear sub-torus of the Clifford M-torus.

    ``rows`` is an M x n matrix whose rows are unit direction vectors; the
    angle of torus factor i is sqrt(M) * scale * <rows_i, u>.  The default
    scale sqrt(n/M) makes the pullback metric of a degree-4 design row matrix
    exactly Euclidean.  ``weights`` are optional per-factor squared amplitudes
    (nonnegative, summing to 1); the default is uniform, which recovers the
    equal-amplitude Clifford wrapping.
    """
    L = np.array([[_to_float(x) for x in row] for row in rows], dtype=float)
    if L.ndim != 2 or L.shape[0] < 1:
        raise ValueError("rows must be a nonempty matrix")
    M, n = L.shape
    norms = np.linalg.norm(L, axis=1)
    if np.any(np.abs(norms - 1.0) > _ROW_UNIT_TOL):
        raise ValueError("torus_linear rows must have unit norm within 1e-12")
    if scale is None:
        scale = math.sqrt(n / M)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if weights is None:
        w = np.full(M, 1.0 / M)
    else:
        w = np.asarray([float(x) for x in weights], dtype=float)
        if w.shape != (M,) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-10:
            raise ValueError("weights must be nonnegative and sum to 1")
    return ImmersionSpec(
        kind="torus_linear",
        rows=tuple(tuple(row) for row in L),
        scale=float(scale),
        weights=tuple(w),
    )


def veronese(m: int) -> ImmersionSpec:
    if m < 1:
        raise ValueError("veronese needs m >= 1")
    return ImmersionSpec(kind="veronese", m=int(m))


def tube_encircle(base_r: float, n1: int, n2: int, rho: float) -> ImmersionSpec:
    if base_r <= 0 or rho <= 0:
        raise ValueError("radii must be positive")
    if rho >= base_r:
        raise ValueError("tube radius rho must satisfy rho < base_r (immersed encircling)")
    if n1 < 1 or n2 < 1:
        raise ValueError("sphere dimensions must be >= 1")
    return ImmersionSpec(
        kind="tube", base_r=float(base_r), n1=int(n1), n2=int(n2), rho=float(rho)
    )


def _to_float(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x))
    return float(x)


# ---------------------------------------------------------------------------
# hyperspherical chart jets

def _sphere_chart_jet(u: np.ndarray, R: float):
    """Position/Jacobian/Hessian of the angle chart of S^m(R) in R^{m+1}.

    x_0 = R cos u_0, x_k = R cos u_k * prod_{j<k} sin u_j, x_m = R prod sin u_j.
    Each ambient coordinate is a product of trig factors of distinct angles,
    so derivatives follow from the product rule with factor replacement.
    """
    m = len(u)
    s, c = np.sin(u), np.cos(u)
    point = np.empty(m + 1)
    jac = np.zeros((m + 1, m))
    hess = np.zeros((m + 1, m, m))
    for i in range(m + 1):
        # factor list for coordinate i: sin(u_j) for j < i, then cos(u_i) if i < m
        idx = list(range(i)) + ([i] if i < m else [])
        val = np.array([s[j] for j in range(i)] + ([c[i]] if i < m else []))
        dva = np.array([c[j] for j in range(i)] + ([-s[i]] if i < m else []))
        point[i] = R * np.prod(val)
        for a, ja in enumerate(idx):
            va = val.copy()
            va[a] = dva[a]
            jac[i, ja] = R * np.prod(va)
            # diagonal second derivative: trig factors satisfy f'' = -f
            vaa = val.copy()
            vaa[a] = -val[a]
            hess[i, ja, ja] = R * np.prod(vaa)
            for b in range(a + 1, len(idx)):
                jb = idx[b]
                vab = val.copy()
                vab[a] = dva[a]
                vab[b] = dva[b]
                v = R * np.prod(vab)
                hess[i, ja, jb] = v
                hess[i, jb, ja] = v
    return point, jac, hess


def _block_diag_jet(parts):
    """Stack independent chart jets into one jet with block-diagonal structure."""
    Ns = [p[0].shape[0] for p in parts]
    ns = [p[1].shape[1] for p in parts]
    N, n = sum(Ns), sum(ns)
    point = np.concatenate([p[0] for p in parts])
    jac = np.zeros((N, n))
    hess = np.zeros((N, n, n))
    ro = co = 0
    for (pt, J, H), Ni, ni in zip(parts, Ns, ns):
        jac[ro : ro + Ni, co : co + ni] = J
        hess[ro : ro + Ni, co : co + ni, co : co + ni] = H
        ro += Ni
        co += ni
    return point, jac, hess


def _torus_jet(u: np.ndarray, L: np.ndarray, scale: float, w: np.ndarray):
    M, n = L.shape
    dtheta = math.sqrt(M) * scale * L  # M x n, gradient of each angle
    theta = dtheta @ u
    amp = np.sqrt(w)
    point = np.empty(2 * M)
    jac = np.empty((2 * M, n))
    hess = np.empty((2 * M, n, n))
    cs, sn = np.cos(theta), np.sin(theta)
    for i in range(M):
        g = dtheta[i]
        gg = np.outer(g, g)
        point[2 * i] = amp[i] * cs[i]
        point[2 * i + 1] = amp[i] * sn[i]
        jac[2 * i] = -amp[i] * sn[i] * g
        jac[2 * i + 1] = amp[i] * cs[i] * g
        hess[2 * i] = -amp[i] * cs[i] * gg
        hess[2 * i + 1] = -amp[i] * sn[i] * gg
    return point, jac, hess


_VERONESE_BASIS: dict[int, np.ndarray] = {}


def _veronese_basis(m: int) -> np.ndarray:
    """Orthonormal basis (Frobenius) of traceless symmetric (m+1)x(m+1) matrices."""
    if m in _VERONESE_BASIS:
        return _VERONESE_BASIS[m]
    d = m + 1
    mats = []
    for i in range(d):
        for j in range(i + 1, d):
            B = np.zeros((d, d))
            B[i, j] = B[j, i] = 1.0 / math.sqrt(2.0)
            mats.append(B)
    for k in range(1, d):
        v = np.zeros(d)
        v[:k] = 1.0
        v[k] = -k
        v /= math.sqrt(k * (k + 1))
        mats.append(np.diag(v))
    basis = np.stack(mats)
    _VERONESE_BASIS[m] = basis
    return basis


def _veronese_jet(u: np.ndarray, m: int):
    x, Jx, Hx = _sphere_chart_jet(u, 1.0)
    basis = _veronese_basis(m)  # K x d x d, K = ambient dim
    alpha = math.sqrt((m + 1) / m)
    # f_k = alpha * x^T B_k x  (the -I/(m+1) shift is killed by tracelessness)
    point = alpha * np.einsum("kab,a,b->k", basis, x, x)
    Bx = np.einsum("kab,b->ka", basis, x)  # K x d
    jac = 2.0 * alpha * Bx @ Jx
    hess = 2.0 * alpha * (
        np.einsum("ka,aij->kij", Bx, Hx)
        + np.einsum("kab,ai,bj->kij", basis, Jx, Jx)
    )
    return point, jac, hess


def _tube_jet(u: np.ndarray, spec: ImmersionSpec):
    n1, n2 = spec.n1, spec.n2
    r, rho = spec.base_r, spec.rho
    s, Js, Hs = _sphere_chart_jet(u[:n1], r)  # base sphere S^{n1}(r)
    w, Jw, Hw = _sphere_chart_jet(u[n1:], 1.0)  # normal sphere S^{n2}(1)
    a = 1.0 + (rho / r) * w[0]
    da = (rho / r) * Jw[0]  # length n2
    dda = (rho / r) * Hw[0]  # n2 x n2
    n = n1 + n2
    N = n1 + 1 + n2
    point = np.concatenate([a * s, rho * w[1:]])
    jac = np.zeros((N, n))
    hess = np.zeros((N, n, n))
    jac[: n1 + 1, :n1] = a * Js
    jac[: n1 + 1, n1:] = np.outer(s, da)
    jac[n1 + 1 :, n1:] = rho * Jw[1:]
    hess[: n1 + 1, :n1, :n1] = a * Hs
    cross = np.einsum("ci,j->cij", Js, da)
    hess[: n1 + 1, :n1, n1:] = cross
    hess[: n1 + 1, n1:, :n1] = np.swapaxes(cross, 1, 2)
    hess[: n1 + 1, n1:, n1:] = np.einsum("c,ij->cij", s, dda)
    hess[n1 + 1 :, n1:, n1:] = rho * Hw[1:]
    return point, jac, hess


# ---------------------------------------------------------------------------
# operations

def _check_params(spec: ImmersionSpec, u) -> np.ndarray:
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape[0] != spec.intrinsic_dim:
        raise ValueError(
            f"parameter dimension {u.shape[0]} != intrinsic dim {spec.intrinsic_dim}"
        )
    if not np.all(np.isfinite(u)):
        raise ValueError("non-finite parameter")
    return u


def _full_jet(spec: ImmersionSpec, u: np.ndarray):
    if spec.kind == "round_sphere":
        return _sphere_chart_jet(u, spec.R)
    if spec.kind == "sphere_product":
        parts = []
        o = 0
        for ni, Ri in spec.factors:
            parts.append(_sphere_chart_jet(u[o : o + ni], Ri))
            o += ni
        return _block_diag_jet(parts)
    if spec.kind == "clifford_torus":
        N = spec.N
        L = np.eye(N)
        return _torus_jet(u, L, 1.0, np.full(N, 1.0 / N))
    if spec.kind == "torus_linear":
        return _torus_jet(u, np.array(spec.rows), spec.scale, np.array(spec.weights))
    if spec.kind == "veronese":
        return _veronese_jet(u, spec.m)
    if spec.kind == "tube":
        return _tube_jet(u, spec)
    raise ValueError(f"unknown kind {spec.kind!r}")


def evaluate(spec: ImmersionSpec, u) -> np.ndarray:
    """Position f(u) in R^{ambient_dim}."""
    u = _check_params(spec, u)
    return _full_jet(spec, u)[0]


def jet2(spec: ImmersionSpec, u) -> Jet2:
    """Analytic 2-jet of the parametrization at u."""
    u = _check_params(spec, u)
    point, jac, hess = _full_jet(spec, u)
    return Jet2(point=point, jac=jac, hess=hess)


def _near_chart_boundary(spec: ImmersionSpec, u: np.ndarray, h: float) -> bool:
    # leading angles of any hyperspherical chart must stay away from the poles
    slices = []
    if spec.kind == "round_sphere":
        slices.append((u[: spec.n - 1],))
    elif spec.kind == "veronese":
        slices.append((u[: spec.m - 1],))
    elif spec.kind == "sphere_product":
        o = 0
        for ni, _ in spec.factors:
            slices.append((u[o : o + ni - 1],))
            o += ni
    elif spec.kind == "tube":
        slices.append((u[: spec.n1 - 1],))
        slices.append((u[spec.n1 : spec.n1 + spec.n2 - 1],))
    for (angles,) in slices:
        if angles.size and np.any(np.abs(np.sin(angles)) < 10.0 * h):
            return True
    return False


def jet2_fd(spec: ImmersionSpec, u, h: float = 1e-4) -> Jet2:
    """Central-difference 2-jet; the validation oracle for :func:`jet2`."""
    if h <= 0:
        raise ValueError("step size h must be positive")
    u = _check_params(spec, u)
    if _near_chart_boundary(spec, u, h):
        raise ValueError("parameter too close to a chart boundary for finite differences")
    n = u.shape[0]
    f0 = evaluate(spec, u)
    N = f0.shape[0]
    jac = np.empty((N, n))
    hess = np.empty((N, n, n))
    def ev(du):
        return evaluate(spec, u + du)
    e = np.eye(n) * h
    for i in range(n):
        fp, fm = ev(e[i]), ev(-e[i])
        jac[:, i] = (fp - fm) / (2 * h)
        hess[:, i, i] = (fp - 2 * f0 + fm) / h**2
        for j in range(i + 1, n):
            fpp = ev(e[i] + e[j])
            fpm = ev(e[i] - e[j])
            fmp = ev(-e[i] + e[j])
            fmm = ev(-e[i] - e[j])
            v = (fpp - fpm - fmp + fmm) / (4 * h**2)
            hess[:, i, j] = v
            hess[:, j, i] = v
    return Jet2(point=f0, jac=jac, hess=hess)


def sample_params(spec: ImmersionSpec, n_samples: int, rng: np.random.Generator,
                  margin: float = 0.4) -> np.ndarray:
    """Random parameter points, kept away from chart boundaries."""
    n = spec.intrinsic_dim
    u = rng.uniform(0.0, 2.0 * math.pi, size=(n_samples, n))
    def clamp_chart(cols_interior):
        for c in cols_interior:
            u[:, c] = rng.uniform(margin, math.pi - margin, size=n_samples)
    if spec.kind == "round_sphere":
        clamp_chart(range(spec.n - 1))
    elif spec.kind == "veronese":
        clamp_chart(range(spec.m - 1))
    elif spec.kind == "sphere_product":
        o = 0
        for ni, _ in spec.factors:
            clamp_chart(range(o, o + ni - 1))
            o += ni
    elif spec.kind == "tube":
        clamp_chart(range(spec.n1 - 1))
        clamp_chart(range(spec.n1, spec.n1 + spec.n2 - 1))
    return u


def declared_containment_radius(spec: ImmersionSpec) -> float:
    """Analytic supremum of the ambient norm over the image."""
    if spec.kind == "round_sphere":
        return spec.R
    if spec.kind == "sphere_product":
        return math.sqrt(sum(R * R for _, R in spec.factors))
    if spec.kind in ("clifford_torus", "torus_linear", "veronese"):
        return 1.0
    if spec.kind == "tube":
        return spec.base_r + spec.rho
    raise ValueError(f"unknown kind {spec.kind!r}")


def containment_radius(spec: ImmersionSpec, n_samples: int = 1000, seed: int = 0) -> float:
    """Supremum estimate of ||f(u)|| over random samples plus chart corners."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = spec.intrinsic_dim
    best = 0.0
    corners = [np.zeros(n)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = math.pi / 2
        corners.append(e)
    for u in corners:
        best = max(best, float(np.linalg.norm(evaluate(spec, u))))
    for u in rng.uniform(0.0, 2.0 * math.pi, size=(n_samples, n)):
        best = max(best, float(np.linalg.norm(evaluate(spec, u))))
    return best


# ---------------------------------------------------------------------------
# JSON wire format

def spec_from_json(data) -> ImmersionSpec:
    """Parse the immersion-spec JSON format.

    Examples: {"kind":"clifford_torus","N":4},
    {"kind":"sphere_product","factors":[[1,0.6],[1,0.8]]},
    {"kind":"torus_linear","rows":[[...]],"scale":...},
    {"kind":"veronese","m":2},
    {"kind":"tube","r":0.6667,"n1":1,"n2":1,"rho":0.3333}.
    Numbers may be decimals or exact "p/q" strings.
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "round_sphere":
        return round_sphere(data["n"], _to_float(data["R"]))
    if kind == "sphere_product":
        return sphere_product([(f[0], _to_float(f[1])) for f in data["factors"]])
    if kind == "clifford_torus":
        return clifford_torus(data["N"])
    if kind == "torus_linear":
        scale = data.get("scale")
        return torus_linear(
            data["rows"],
            scale=None if scale is None else _to_float(scale),
            weights=data.get("weights"),
        )
    if kind == "veronese":
        return veronese(data["m"])
    if kind == "tube":
        return tube_encircle(_to_float(data["r"]), data["n1"], data["n2"], _to_float(data["rho"]))
    raise ValueError(f"unknown immersion kind {kind!r}")


def spec_to_json(spec: ImmersionSpec) -> dict:
    if spec.kind == "round_sphere":
        return {"kind": "round_sphere", "n": spec.n, "R": spec.R}
    if spec.kind == "sphere_product":
        return {"kind": "sphere_product", "factors": [list(f) for f in spec.factors]}
    if spec.kind == "clifford_torus":
        return {"kind": "clifford_torus", "N": spec.N}
    if spec.kind == "torus_linear":
        return {
            "kind": "torus_linear",
            "rows": [list(r) for r in spec.rows],
            "scale": spec.scale,
            "weights": list(spec.weights),
        }
    if spec.kind == "veronese":
        return {"kind": "veronese", "m": spec.m}
    if spec.kind == "tube":
        return {"kind": "tube", "r": spec.base_r, "n1": spec.n1, "n2": spec.n2, "rho": spec.rho}
    raise ValueError(f"unknown kind {spec.kind!r}")
