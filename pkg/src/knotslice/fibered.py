"""The fibered model X_{n,d}: reduced matrices A_red = v w^T with base map q_d.

Covers the gradient estimate for q_d, the fibers over the alpha-coordinate
cut down by the U(n-1) moment map, the Lagrangians assembled from paths in
the alpha-plane, the two paths whose intersection computes the trefoil
groups, and the monodromy of the thin eigenvalues around zeta_d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .slice import _clusters, build_xnd, c1_c2, q_d, q_d_gradient, singular_alphas, zeta
from .transport import (
    COMPLETED,
    BasePath,
    FibrationModel,
    StepControl,
    TransportError,
    e_matrix,
    naive_transport,
)

POINT = "POINT"
PROJECTIVE = "PROJECTIVE"
SPHERE = "SPHERE"

RANK_THRESHOLD = 1e-6


class PathError(ValueError):
    code = "INVALID_PATH"


def _rank(M: np.ndarray, threshold: float = RANK_THRESHOLD) -> int:
    """Singular values above threshold * leading; the leading value is floored at 1.

    Rows are chords divided by their step, so genuine tangent directions
    have size of order one and a matrix of pure noise reads as rank 0.
    """
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > threshold * max(s[0], 1.0)))


class XndModel(FibrationModel):
    """x = (v, w), A_red = v w^T, base q_d(A_red), metric from the entries of A_red."""

    def __init__(self, n: int, d: complex):
        self.n, self.d = n, d
        self.nx = 2 * n
        self.nbase = 1
        self.blocks = np.ones(n * n, dtype=int)

    def split(self, x):
        return x[: self.n], x[self.n:]

    def a_red(self, x) -> np.ndarray:
        v, w = self.split(x)
        return np.outer(v, w)

    def base(self, x):
        return np.array([q_d(self.a_red(x), self.d)])

    def base_jacobian(self, x):
        v, w = self.split(x)
        G = q_d_gradient(self.a_red(x), self.d)
        return np.concatenate([G @ w, G.T @ v])[None, :]

    def embed(self, x):
        return self.a_red(x).ravel()

    def embed_jacobian(self, x):
        v, w = self.split(x)
        I = np.eye(self.n)
        return np.hstack([np.kron(I, w[:, None]), np.kron(v[:, None], I)])

    def regauge(self, x):
        v, w = self.split(x)
        nv, nw = np.linalg.norm(v), np.linalg.norm(w)
        if nv == 0 or nw == 0:
            return x
        t = math.sqrt(nw / nv)
        return np.concatenate([v * t, w / t])


# Gradient estimate


def restricted_gradient_sq(n: int, d: complex, v, w) -> float:
    """||grad q_d||^2 on the rank-one cone at v w^T, Euclidean metric on the entries."""
    v, w = np.asarray(v, dtype=complex), np.asarray(w, dtype=complex)
    I = np.eye(n)
    J = np.hstack([np.kron(I, w[:, None]), np.kron(v[:, None], I)])
    U, s, _ = np.linalg.svd(J, full_matrices=False)
    Q = U[:, s > 1e-12 * s[0]]
    g = q_d_gradient(np.outer(v, w), d).ravel()
    return float(np.linalg.norm(Q.T @ g) ** 2)


@dataclass
class GradientScan:
    nu: float
    samples: int
    excluded: int
    argmin: np.ndarray


def _cone_samples(n, count, rng, radius):
    v = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    w = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    # spread |A_red| uniformly over (0, radius] and mix in near-degenerate directions
    norms = np.linalg.norm(v, axis=1) * np.linalg.norm(w, axis=1)
    r = radius * rng.uniform(0, 1, count) ** 0.5
    scale = np.sqrt(r / norms)
    v *= scale[:, None]
    w *= scale[:, None]
    return v, w


def gradient_bound_scan(n: int, d: complex, samples: int = 1000, radius: float = 1.0, seed=0,
                        guard: float = 1e-9) -> GradientScan:
    """min ||grad q_d||^2 / |q_d - zeta_d| over random rank-one A_red with |A_red| <= radius.

    Samples with |q_d - zeta_d| below ``guard`` are dropped; the ratio is
    undefined there.
    """
    if d == 0:
        raise ValueError("d must be nonzero")
    rng = np.random.default_rng(seed)
    v, w = _cone_samples(n, samples, rng, radius)
    zd = zeta(n, d)
    best, arg, excluded = np.inf, None, 0
    for vi, wi in zip(v, w):
        gap = abs(q_d(np.outer(vi, wi), d) - zd)
        if gap < guard:
            excluded += 1
            continue
        ratio = restricted_gradient_sq(n, d, vi, wi) / gap
        if ratio < best:
            best, arg = ratio, np.outer(vi, wi)
    return GradientScan(float(best), samples, excluded, arg)


# Moment-map fibers over the alpha-coordinate


def _to_real(v, w, theta=0.0):
    return np.concatenate([v.real, v.imag, w.real, w.imag, [theta]])


def _from_real(x, n):
    return x[:n] + 1j * x[n:2 * n], x[2 * n:3 * n] + 1j * x[3 * n:4 * n]


def moment_equations(x, n, c1, c2) -> np.ndarray:
    """Real equations of the moment-map zero set over (c1, c2).

    Unknowns (v, w, theta): v1 w1 = c1, sum_{i>1} v_i w_i = c2,
    w_i = e^{i theta} conj(v_i) for i > 1, and |v1|^2 = |w1|^2, which given
    the previous equations is the moment map |v|^2 - |w|^2 of the C^* action
    (written this way to avoid cancellation). The phase form of the U(n-1)
    condition keeps the system regular where the U(n-1) action has
    stabilizers. Accepts a batch of points as rows.
    """
    X = np.atleast_2d(x)
    v = X[:, :n] + 1j * X[:, n:2 * n]
    w = X[:, 2 * n:3 * n] + 1j * X[:, 3 * n:4 * n]
    lam = np.exp(1j * X[:, 4 * n])
    vv, ww = v[:, 1:], w[:, 1:]
    out = np.hstack([
        (v[:, 0] * w[:, 0] - c1)[:, None],
        (np.sum(vv * ww, axis=1) - c2)[:, None],
        ww - lam[:, None] * np.conj(vv),
    ])
    H = np.abs(v[:, 0]) ** 2 - np.abs(w[:, 0]) ** 2
    F = np.hstack([out.real, out.imag, H[:, None]])
    return F[0] if np.ndim(x) == 1 else F


def _jacobian(x, n, c1, c2):
    """Real Jacobian of moment_equations from the Wirtinger derivatives."""
    v, w = _from_real(x, n)
    lam = np.exp(1j * x[4 * n])
    ncx = n + 1
    Dz = np.zeros((ncx, 2 * n), dtype=complex)
    Dzb = np.zeros((ncx, 2 * n), dtype=complex)
    Dt = np.zeros(ncx, dtype=complex)
    Dz[0, 0], Dz[0, n] = w[0], v[0]
    Dz[1, 1:n], Dz[1, n + 1:] = w[1:], v[1:]
    for i in range(1, n):
        Dz[1 + i, n + i] = 1
        Dzb[1 + i, i] = -lam
        Dt[1 + i] = -1j * lam * np.conj(v[i])
    re_part = Dz + Dzb
    im_part = 1j * (Dz - Dzb)
    C = np.hstack([re_part[:, :n], im_part[:, :n], re_part[:, n:], im_part[:, n:], Dt[:, None]])
    H = np.zeros(4 * n + 1)
    H[0], H[n] = 2 * v[0].real, 2 * v[0].imag
    H[2 * n], H[3 * n] = -2 * w[0].real, -2 * w[0].imag
    return np.vstack([C.real, C.imag, H[None, :]])


def project_to_fiber(x, n, c1, c2, maxit=300):
    """Gauss-Newton with minimum-norm steps.

    Convergence is only linear at singular points, so iterate until the
    steps stop shrinking rather than until the residual is small.
    """
    prev = np.inf
    for _ in range(maxit):
        F = moment_equations(x, n, c1, c2)
        step = np.linalg.lstsq(_jacobian(x, n, c1, c2), F, rcond=None)[0]
        x = x - step
        size = np.linalg.norm(step)
        if size < 1e-17 * max(1.0, np.linalg.norm(x)) or (size < 1e-13 and size >= 0.9 * prev):
            break
        prev = size
    return x


def a_red_real(x, n) -> np.ndarray:
    v, w = _from_real(x, n)
    A = np.outer(v, w).ravel()
    return np.concatenate([A.real, A.imag])


def classify_c(c1: complex, c2: complex, tol: float = 1e-12) -> str:
    if abs(c2) <= tol:
        return POINT
    if abs(c1) <= tol:
        return PROJECTIVE
    return SPHERE


EXPECTED_DIM = {POINT: lambda n: 0, PROJECTIVE: lambda n: 2 * n - 4, SPHERE: lambda n: 2 * n - 3}


def fiber_point(n: int, c1: complex, c2: complex, rng) -> np.ndarray:
    """A point on the zero set: w_i = lambda conj(v_i) with |v|^2 = |c2|, lambda = c2/|c2|."""
    v = np.zeros(n, dtype=complex)
    w = np.zeros(n, dtype=complex)
    if abs(c1) > 0:
        v[0] = math.sqrt(abs(c1)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        w[0] = c1 / v[0]
    theta = 0.0
    if abs(c2) > 0:
        theta = float(np.angle(c2))
        z = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        v[1:] = z / np.linalg.norm(z) * math.sqrt(abs(c2))
        w[1:] = np.exp(1j * theta) * np.conj(v[1:])
    return _to_real(v, w, theta)


def tangent_secants(x, n, c1, c2, rng, eps, directions=None) -> np.ndarray:
    """Chords from x to nearby points of the zero set, read in A_red coordinates (rows).

    Nearby points come from projecting x + eps u for random unit u. The
    projection may slide along the set, so only the chords are used, and eps
    is kept small enough that their curvature error sits below the rank
    threshold.
    """
    k = directions or 6 * n
    base = a_red_real(x, n)
    rows = []
    for _ in range(k):
        u = rng.standard_normal(len(x))
        u /= np.linalg.norm(u)
        for sign in (1, -1):
            xp = project_to_fiber(x + sign * eps * u, n, c1, c2)
            rows.append((a_red_real(xp, n) - base) / eps)
    return np.array(rows)


@dataclass
class MomentFiber:
    n: int
    alpha: complex
    c1: complex
    c2: complex
    classification: str
    points: list
    residual: float
    dimension: int
    stable: bool

    @property
    def expected_dimension(self) -> int:
        return EXPECTED_DIM[self.classification](self.n)

    def a_red(self) -> list[np.ndarray]:
        out = []
        for x in self.points:
            v, w = _from_real(x, self.n)
            out.append(np.outer(v, w))
        return out

    def to_json(self) -> dict:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "c1": [self.c1.real, self.c1.imag],
            "c2": [self.c2.real, self.c2.imag],
            "classification": self.classification,
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "stable": self.stable,
            "residual": self.residual,
        }


def moment_fiber(n: int, d: complex, z: complex, alpha: complex, seed=0, samples: int = 3,
                 eps: float = 1e-7) -> MomentFiber:
    c1, c2 = c1_c2(alpha, d, z, n)
    return moment_fiber_c(n, c1, c2, seed=seed, samples=samples, eps=eps, alpha=alpha)


def moment_fiber_c(n: int, c1: complex, c2: complex, seed=0, samples: int = 3, eps: float = 1e-7,
                   alpha: complex = complex("nan")) -> MomentFiber:
    rng = np.random.default_rng(seed)
    c1, c2 = complex(c1), complex(c2)
    cls = classify_c(c1, c2)
    # sample the set the classification names: values under the tolerance are exact zeros
    if cls == POINT:
        c2 = 0j
    elif cls == PROJECTIVE:
        c1 = 0j
    pts = [fiber_point(n, c1, c2, rng) for _ in range(samples)]
    res = max(float(np.linalg.norm(moment_equations(x, n, c1, c2))) for x in pts)
    dims = []
    for e in (eps, 3 * eps):
        dims.append(max(_rank(tangent_secants(x, n, c1, c2, rng, e)) for x in pts))
    return MomentFiber(n, complex(alpha), c1, c2, cls, pts, res, dims[0], dims[0] == dims[1])


def alpha_for_c(n: int, d: complex, c1: complex, c2: complex) -> tuple[complex, complex]:
    """(alpha, z) realizing the given (c1, c2)."""
    alpha = (-(n + 1) * d - c2) / 2
    z = -c1 - 2 * (n + 1) * d * alpha - 4 * alpha ** 2
    return complex(alpha), complex(z)


C_GRID = (0.0, 0.3, -0.2 + 0.4j)


def moment_chart(n: int, d: complex = 0.3, seed=0) -> list[MomentFiber]:
    """moment_fiber on the 3 x 3 grid of (c1, c2) values, each converted to (alpha, z)."""
    out = []
    for i, c1 in enumerate(C_GRID):
        for j, c2 in enumerate(C_GRID):
            alpha, z = alpha_for_c(n, d, c1, c2)
            out.append(moment_fiber(n, d, z, alpha, seed=seed + 3 * i + j))
    return out


# Lagrangians over paths in the alpha-plane


@dataclass
class LayeredSet:
    path_params: list
    layers: list
    profile: list
    endpoint: str
    total_dimension: int


def _section(n, c1, c2, omega, theta):
    v = np.zeros(n, dtype=complex)
    w = np.zeros(n, dtype=complex)
    if abs(c1) > 0:
        v[0] = math.sqrt(abs(c1)) * np.exp(1j * theta)
        w[0] = c1 / v[0]
    theta = 0.0
    if abs(c2) > 0:
        theta = float(np.angle(c2))
        v[1:] = omega * math.sqrt(abs(c2))
        w[1:] = np.exp(1j * theta) * np.conj(v[1:])
    return _to_real(v, w, theta)


def check_alpha_path(n, d, z, delta: BasePath, grid: int = 400, tol: float = 1e-9) -> str:
    """Validate a path from alpha_1 to alpha_2 or alpha_3; returns which endpoint it reaches."""
    a1, a2, a3 = singular_alphas(n, d, z)
    start, end = complex(delta(0.0)[0]), complex(delta(1.0)[0])
    scale = max(1.0, abs(a1))
    pts = np.array([complex(delta(s)[0]) for s in np.linspace(0, 1, grid + 1)])
    if np.abs(np.diff(pts)).sum() <= tol * scale:
        raise PathError("path has zero length")
    if abs(start - a1) > tol * scale:
        raise PathError("path must start at alpha_1")
    if abs(end - a2) <= tol * scale:
        which = "alpha2"
    elif abs(end - a3) <= tol * scale:
        which = "alpha3"
    else:
        raise PathError("path must end at alpha_2 or alpha_3")
    # closest approach of each polyline segment to each singular value, away from s = 0 and s = 1
    p0, seg = pts[:-1], np.diff(pts)
    seg_len2 = np.maximum(np.abs(seg) ** 2, np.finfo(float).tiny)
    for a in (a1, a2, a3):
        u = np.clip(((a - p0) * seg.conj()).real / seg_len2, 0.0, 1.0)
        dist = np.abs(p0 + u * seg - a)
        s_hit = (np.arange(grid) + u) / grid
        if np.any((dist <= tol * scale) & (s_hit > 1e-9) & (s_hit < 1 - 1e-9)):
            raise PathError("path meets a singular alpha in its interior")
    return which


def lambda_path_samples(n: int, d: complex, z: complex, delta: BasePath, seed=0, layers: int = 5) -> LayeredSet:
    which = check_alpha_path(n, d, z, delta)
    params = [0.0] + list(np.linspace(0, 1, layers + 2)[1:-1]) + [1.0]
    fibers = [moment_fiber(n, d, z, complex(delta(s)[0]), seed=seed + i) for i, s in enumerate(params)]
    # tangent space of the union at an interior point: fiber directions plus the motion along delta
    rng = np.random.default_rng(seed)
    s_mid = 0.5
    alpha = complex(delta(s_mid)[0])
    c1, c2 = c1_c2(alpha, d, z, n)
    omega = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    omega /= np.linalg.norm(omega)
    theta = rng.uniform(0, 2 * np.pi)
    x = _section(n, c1, c2, omega, theta)
    rows = list(tangent_secants(x, n, c1, c2, rng, 1e-7))
    h = 1e-5
    ends = []
    for s in (s_mid + h, s_mid - h):
        a = complex(delta(s)[0])
        ends.append(a_red_real(_section(n, *c1_c2(a, d, z, n), omega, theta), n))
    rows.append((ends[0] - ends[1]) / (2 * h))
    return LayeredSet(params, fibers, [f.classification for f in fibers], which, _rank(np.array(rows)))


# The trefoil configuration


@dataclass
class Intersection:
    kind: str
    point: complex
    param_delta1: float
    param_delta3: float
    angle: float


@dataclass
class TrefoilPaths:
    alphas: tuple
    delta1: np.ndarray
    delta3: np.ndarray
    intersections: list = field(default_factory=list)


def _check_regime(n, d, z):
    a1, a2, a3 = singular_alphas(n, d, z)
    if not all(abs(a.imag) < 1e-12 for a in (a1, a2, a3)):
        raise PathError("singular alphas are not real; need 0 < z << d")
    r1, r2, r3 = a1.real, a2.real, a3.real
    if not (r1 < r2 < r3 < 0):
        raise PathError("singular alphas do not interleave as alpha_1 < alpha_2 < alpha_3 < 0")
    if not (0 < z < zeta(n, d) / 4):
        raise PathError("z must be small and positive relative to zeta_d")
    return r1, r2, r3


def trefoil_paths(n: int, d: float, z: float, eta: float = 0.1, resolution: int = 4000) -> TrefoilPaths:
    """Polyline models of delta_1 (alpha_1 to alpha_2) and its image under three half-twists around [alpha_2, alpha_3].

    The twisted path leaves alpha_1, winds one and a half turns around the
    segment [alpha_2, alpha_3] inside the thin annulus between alpha_1 and
    alpha_2, and ends at alpha_3.
    """
    a1, a2, a3 = _check_regime(n, d, z)
    c = (a2 + a3) / 2
    r = (a3 - a2) / 2
    g = a2 - a1
    rho1, rho2 = r + g / 3, r + 2 * g / 3
    delta1 = np.array([a1, a2], dtype=complex)
    start = c + rho2 * np.exp(1j * (np.pi + eta))
    lead = np.linspace(a1, start, 50)
    rho = np.linspace(rho2, rho1, resolution)
    theta = np.pi + eta + 3 * np.pi * (rho2 - rho) / (rho2 - rho1)
    spiral = c + rho * np.exp(1j * theta)
    tail = np.linspace(spiral[-1], a3, 50)
    delta3 = np.concatenate([lead, spiral[1:], tail[1:]])
    out = TrefoilPaths((a1, a2, a3), delta1, delta3)
    out.intersections = _intersections(delta1, delta3)
    return out


def _cross(a, b):
    return a.real * b.imag - a.imag * b.real


def _arc_params(poly):
    seg = np.abs(np.diff(poly))
    cum = np.concatenate([[0], np.cumsum(seg)])
    return cum / cum[-1]


def _intersections(p: np.ndarray, q: np.ndarray, tol: float = 1e-12) -> list[Intersection]:
    out = []
    tp, tq = _arc_params(p), _arc_params(q)
    scale = max(np.abs(p).max(), np.abs(q).max())
    for i, ei in ((0, 0), (len(p) - 1, -1)):
        for j, ej in ((0, 0), (len(q) - 1, -1)):
            if abs(p[ei] - q[ej]) <= tol * scale:
                out.append(Intersection("endpoint", complex(p[ei]), float(tp[i]), float(tq[j]), float("nan")))
    for i in range(len(p) - 1):
        a, b = p[i], p[i + 1]
        for j in range(len(q) - 1):
            c, e = q[j], q[j + 1]
            r, s = b - a, e - c
            den = _cross(r, s)
            if den == 0:
                continue
            u = _cross(c - a, s) / den
            v = _cross(c - a, r) / den
            if tol < u < 1 - tol and tol < v < 1 - tol:
                ang = abs(np.angle(s / r))
                ang = min(ang, np.pi - ang)
                out.append(Intersection(
                    "interior", complex(a + u * r),
                    float(tp[i] + u * (tp[i + 1] - tp[i])), float(tq[j] + v * (tq[j + 1] - tq[j])), float(ang)))
    return out


def vanishing_orbit_dimension(n: int, t: complex = 0.5) -> int:
    """Real dimension of the unitary orbit of E_t, from the span of [iH, E_t]."""
    E = e_matrix(n, t)
    rows = []
    for a in range(n):
        for b in range(n):
            for H in _hermitian_basis(n, a, b):
                T = 1j * (H @ E - E @ H)
                rows.append(np.concatenate([T.real.ravel(), T.imag.ravel()]))
    return _rank(np.array(rows))


def _hermitian_basis(n, a, b):
    if a > b:
        return []
    if a == b:
        H = np.zeros((n, n), dtype=complex)
        H[a, a] = 1
        return [H]
    H1 = np.zeros((n, n), dtype=complex)
    H1[a, b] = H1[b, a] = 1
    H2 = np.zeros((n, n), dtype=complex)
    H2[a, b], H2[b, a] = 1j, -1j
    return [H1, H2]


@dataclass
class TrefoilReport:
    n: int
    d: float
    z: float
    endpoint: str
    intersections: list
    strata: list

    def to_json(self) -> dict:
        return {
            "n": self.n, "d": self.d, "z": self.z, "endpoint": self.endpoint,
            "intersection_count": len(self.intersections),
            "strata": self.strata,
        }


def trefoil_intersection_report(n: int, d: float, z: float, seed=0) -> TrefoilReport:
    paths = trefoil_paths(n, d, z)
    base_dim = vanishing_orbit_dimension(n)
    strata = []
    for k, inter in enumerate(sorted(paths.intersections, key=lambda it: it.param_delta1)):
        fib = moment_fiber(n, d, z, inter.point, seed=seed + k)
        strata.append({
            "kind": inter.kind,
            "alpha": [inter.point.real, inter.point.imag],
            "param_delta1": inter.param_delta1,
            "param_delta3": inter.param_delta3,
            "crossing_angle": None if math.isnan(inter.angle) else inter.angle,
            "fiber": fib.classification,
            "fiber_dimension": fib.dimension,
            "base_dimension": base_dim,
            "total_dimension": fib.dimension + base_dim,
            "stable": fib.stable,
        })
    return TrefoilReport(n, d, z, "alpha2", paths.intersections, strata)


# Monodromy of the thin eigenvalues


def monodromy_path(n: int, d: complex, z: complex) -> BasePath:
    """z to zeta/2, a positive circle of radius zeta/2 around zeta, and back."""
    zd = zeta(n, d)
    half = zd / 2
    out = BasePath.segment(z, half)
    loop = BasePath(lambda s: np.array([zd + half * np.exp(1j * (np.pi + 2 * np.pi * s))]),
                    lambda s: np.array([2j * np.pi * half * np.exp(1j * (np.pi + 2 * np.pi * s))]))
    back = BasePath.segment(half, z)
    return BasePath.concat([out, loop, back])


def thin_eigenvalues(n: int, d: complex, A_red: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    X = build_xnd(n, d, A_red)
    eigs = np.linalg.eigvals(X)
    if n == 2:
        keep = np.argsort(np.abs(eigs - d))[1:]
        return eigs[keep]
    thick = [cl for cl in _clusters(eigs, tol * max(1.0, np.abs(X).max())) if len(cl) == n - 1]
    if len(thick) != 1:
        raise TransportError("no unique thick cluster")
    mask = np.ones(len(eigs), dtype=bool)
    for val in thick[0]:
        mask[np.argmin(np.where(mask, np.abs(eigs - val), np.inf))] = False
    return eigs[mask]


@dataclass
class MonodromyResult:
    swapped: bool
    start: np.ndarray
    end: np.ndarray
    status: str


def monodromy_swap(n: int, d: complex, z: complex, seed=0) -> MonodromyResult:
    rng = np.random.default_rng(seed)
    model = XndModel(n, d)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v, w = 0.3 * v / np.linalg.norm(v), 0.3 * w / np.linalg.norm(w)
    x0 = np.concatenate([v, w])
    path = monodromy_path(n, d, z)
    trace = naive_transport(model, x0, path, control=StepControl(hmax=0.005))
    if trace.status != COMPLETED:
        return MonodromyResult(False, np.array([]), np.array([]), trace.status)
    labels = thin_eigenvalues(n, d, model.a_red(trace.points[0]))
    start = labels.copy()
    for x in trace.points[1:]:
        cur = thin_eigenvalues(n, d, model.a_red(x))
        if abs(cur[0] - labels[0]) + abs(cur[1] - labels[1]) > abs(cur[1] - labels[0]) + abs(cur[0] - labels[1]):
            cur = cur[::-1]
        labels = cur
    swapped = abs(labels[0] - start[1]) < abs(labels[0] - start[0])
    return MonodromyResult(bool(swapped), start, labels, trace.status)

