"""The block companion slice S_{m,n}, its adjoint-quotient map and fiber sampling.

A slice element is a list of n x n blocks Y_1..Y_m with trace(Y_1) = 0. It
assembles into the mn x mn matrix whose first block column is Y_1..Y_m and
whose block superdiagonal is the identity. Its eigenvector equations are
packaged in the monic matrix polynomial

    A(mu) = mu^m I - mu^{m-1} Y_1 - ... - Y_m,     det A(mu) = charpoly.

A regular fiber is fixed by m thin eigenvalues (multiplicity 1) and m thick
eigenvalues (multiplicity n-1, semisimple).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import subspace_angles
from scipy.optimize import linear_sum_assignment

TRACE_TOL = 1e-12


class SliceError(ValueError):
    code = "SLICE_ERROR"

    def __init__(self, message: str):
        super().__init__(f"{self.code}: {message}")


class MultiplicityMismatch(SliceError):
    code = "MULTIPLICITY_MISMATCH"


class SemisimplicityFail(SliceError):
    code = "SEMISIMPLICITY_FAIL"


class NoConvergence(SliceError):
    code = "NO_CONVERGENCE"


class RankViolation(SliceError):
    code = "RANK_VIOLATION"


class ConfigCollision(SliceError):
    code = "CONFIG_COLLISION"


@dataclass(frozen=True)
class SliceElement:
    m: int
    n: int
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        blocks = tuple(np.array(B, dtype=complex) for B in self.blocks)
        if len(blocks) != self.m:
            raise ValueError(f"expected {self.m} blocks, got {len(blocks)}")
        for B in blocks:
            if B.shape != (self.n, self.n):
                raise ValueError(f"block of shape {B.shape}, expected {(self.n, self.n)}")
            if not np.all(np.isfinite(B)):
                raise ValueError("non-finite entries")
            B.setflags(write=False)
        if abs(np.trace(blocks[0])) > TRACE_TOL * max(1.0, np.abs(blocks[0]).max()):
            raise ValueError(f"trace(Y_1) = {np.trace(blocks[0])} is not zero")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_vector(cls, m: int, n: int, vec: np.ndarray) -> SliceElement:
        blocks = np.asarray(vec, dtype=complex).reshape(m, n, n)
        return cls(m, n, tuple(blocks))

    def vector(self) -> np.ndarray:
        return np.concatenate([B.ravel() for B in self.blocks])

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "blocks": [[[[z.real, z.imag] for z in row] for row in B] for B in self.blocks],
        }

    @classmethod
    def from_json(cls, data: dict) -> SliceElement:
        blocks = [np.array([[complex(re, im) for re, im in row] for row in B]) for B in data["blocks"]]
        return cls(int(data["m"]), int(data["n"]), tuple(blocks))


@dataclass(frozen=True)
class BipartiteConfig:
    thin: tuple[complex, ...]
    thick: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "thin", tuple(complex(x) for x in self.thin))
        object.__setattr__(self, "thick", tuple(complex(x) for x in self.thick))
        if len(self.thin) != len(self.thick):
            raise ValueError("thin and thick lists must have the same length")

    @property
    def m(self) -> int:
        return len(self.thin)

    def trace(self, n: int) -> complex:
        return sum(self.thin) + (n - 1) * sum(self.thick)

    def recentered(self, n: int) -> BipartiteConfig:
        """Subtract T/(mn) from every value so the weighted sum vanishes."""
        shift = self.trace(n) / (self.m * n)
        return BipartiteConfig(tuple(x - shift for x in self.thin), tuple(x - shift for x in self.thick))

    def scaled(self, c: complex) -> BipartiteConfig:
        return BipartiteConfig(tuple(c * x for x in self.thin), tuple(c * x for x in self.thick))

    def values(self) -> np.ndarray:
        return np.array(self.thin + self.thick, dtype=complex)

    def is_regular(self, tol: float = 1e-9) -> bool:
        v = self.values()
        d = np.abs(v[:, None] - v[None, :]) + np.eye(len(v))
        return bool(np.all(d > tol))

    def to_json(self) -> dict:
        return {
            "thin": [[x.real, x.imag] for x in self.thin],
            "thick": [[x.real, x.imag] for x in self.thick],
        }


def _matching_error(a, b) -> float:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if len(a) != len(b):
        return float("inf")
    if len(a) == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def config_error(a: BipartiteConfig, b: BipartiteConfig, n: int) -> float:
    """Largest eigenvalue mismatch under the best matching.

    For n = 2 thin and thick values have the same multiplicity and only the
    union is meaningful, so the union is compared.
    """
    if n == 2:
        return _matching_error(a.values(), b.values())
    return max(_matching_error(a.thin, b.thin), _matching_error(a.thick, b.thick))


def nilpotent_data(m: int, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(N+, H, N-): an sl2 triple built from n Jordan blocks of size m."""
    I = np.eye(n)
    Np = np.zeros((m * n, m * n), dtype=complex)
    Nm = np.zeros_like(Np)
    H = np.zeros_like(Np)
    for k in range(m):
        H[k * n:(k + 1) * n, k * n:(k + 1) * n] = (m - 1 - 2 * k) * I
    for k in range(1, m):
        Np[(k - 1) * n:k * n, k * n:(k + 1) * n] = I
        Nm[k * n:(k + 1) * n, (k - 1) * n:k * n] = k * (m - k) * I
    return Np, H, Nm


def assemble(Y: SliceElement) -> np.ndarray:
    m, n = Y.m, Y.n
    X = nilpotent_data(m, n)[0]
    for k, B in enumerate(Y.blocks):
        X[k * n:(k + 1) * n, :n] = B
    return X


def lambda_action(r: complex, Y: SliceElement) -> SliceElement:
    """Y_k -> r^{2k} Y_k; eigenvalues scale by r^2."""
    return SliceElement(Y.m, Y.n, tuple(r ** (2 * (k + 1)) * B for k, B in enumerate(Y.blocks)))


@dataclass(frozen=True)
class MatrixPolynomial:
    """A(mu) = sum_k coeffs[k] mu^{m-k}, coeffs[0] = I."""

    coeffs: tuple[np.ndarray, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, mu: complex) -> np.ndarray:
        out = np.zeros_like(self.coeffs[0], dtype=complex)
        for C in self.coeffs:
            out = out * mu + C
        return out

    def derivative(self, mu: complex) -> np.ndarray:
        m = self.degree
        out = np.zeros_like(self.coeffs[0], dtype=complex)
        for k, C in enumerate(self.coeffs[:-1]):
            out = out + (m - k) * mu ** (m - k - 1) * C
        return out

    def det(self, mu: complex) -> complex:
        return complex(np.linalg.det(self(mu)))


def matrix_polynomial(Y: SliceElement) -> MatrixPolynomial:
    I = np.eye(Y.n, dtype=complex)
    return MatrixPolynomial((I,) + tuple(-B for B in Y.blocks))


def _clusters(eigs: np.ndarray, tol: float) -> list[np.ndarray]:
    """Single-linkage clusters of eigenvalues at distance <= tol."""
    k = len(eigs)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = np.abs(eigs[:, None] - eigs[None, :])
    for i in range(k):
        for j in range(i + 1, k):
            if dist[i, j] <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    out = [eigs[idx] for idx in groups.values()]
    out.sort(key=lambda c: (round(c.mean().real, 9), round(c.mean().imag, 9)))
    return out


def kernel_dimension(M: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    lead = max(s[0], 1.0) if len(s) else 1.0
    return int(np.sum(s < tol * lead))


@dataclass
class ChiResult:
    config: BipartiteConfig
    coincident: tuple[complex, ...] = ()
    clusters: list[tuple[complex, int, int]] = field(default_factory=list)


def _classify(Y: SliceElement, tol: float, allow_coincident: bool) -> ChiResult:
    n, m = Y.n, Y.m
    X = assemble(Y)
    scale = max(1.0, float(np.abs(X).max()))
    eigs = np.linalg.eigvals(X)
    A = matrix_polynomial(Y)
    thin, thick, both, info = [], [], [], []
    for cl in _clusters(eigs, tol * scale):
        c = complex(cl.mean())
        k = len(cl)
        g = kernel_dimension(A(c), tol)
        info.append((c, k, g))
        if g < k and k > 1:
            raise SemisimplicityFail(f"eigenvalue {c:.6g} has multiplicity {k} but kernel dimension {g}")
        if k == 1:
            thin.append(c)
        elif k == n - 1:
            thick.append(c)
        elif k == n and allow_coincident:
            both.append(c)
        else:
            raise MultiplicityMismatch(f"cluster of size {k} at {c:.6g} fits no thin/thick pattern")
    if n == 2:
        # every cluster is simple; split by ordering, only the union is meaningful
        vals = sorted(thin + thick, key=lambda z: (z.real, z.imag))
        thin, thick = vals[: len(vals) // 2], vals[len(vals) // 2:]
    thin += both
    thick += both
    if len(thin) != m or len(thick) != m:
        raise MultiplicityMismatch(f"found {len(thin)} thin and {len(thick)} thick values, expected {m} each")
    return ChiResult(BipartiteConfig(tuple(thin), tuple(thick)), tuple(both), info)


def chi_pi(Y: SliceElement, tol: float = 1e-6, allow_coincident: bool = False) -> BipartiteConfig:
    """Thin and thick eigenvalues of assemble(Y).

    The cluster pattern must agree at tol and tol/2. With
    ``allow_coincident`` a semisimple cluster of size n is read as a thin and
    a thick value that coincide.
    """
    if Y.n < 2:
        raise ValueError("thin/thick splitting needs n >= 2")
    a = _classify(Y, tol, allow_coincident)
    b = _classify(Y, tol / 2, allow_coincident)
    if [k for _, k, _ in a.clusters] != [k for _, k, _ in b.clusters]:
        raise MultiplicityMismatch("cluster pattern changes when the tolerance is halved")
    return a.config


def newl_margin(Y: SliceElement, tol: float = 1e-6) -> float:
    """Smallest singular value of ker(mu I - X) -> first n coordinates over detected eigenvalues."""
    X = assemble(Y)
    n = Y.n
    scale = max(1.0, float(np.abs(X).max()))
    worst = np.inf
    for cl in _clusters(np.linalg.eigvals(X), tol * scale):
        c = complex(cl.mean())
        M = c * np.eye(X.shape[0]) - X
        u, s, vh = np.linalg.svd(M)
        k = max(1, int(np.sum(s < tol * max(1.0, s[0]))))
        K = vh[-k:].conj().T
        sig = np.linalg.svd(K[:n], compute_uv=False)
        worst = min(worst, float(sig.min()))
    return worst


def git_map(v, w) -> np.ndarray:
    """f(v, w) = v w^T - (v.w)/n I; thin eigenvalue (n-1)(v.w)/n, thick -(v.w)/n."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = len(v)
    return np.outer(v, w) - (v @ w) / n * np.eye(n)


@dataclass
class TransversalityReport:
    min_angle: float
    orbit_dim: int
    slice_dim: int
    min_sample_sigma: float
    total_dim: int

    @property
    def ok(self) -> bool:
        return self.orbit_dim + self.slice_dim == self.total_dim and self.min_sample_sigma > 1e-8


def _slice_tangent(m: int, n: int) -> np.ndarray:
    N = m * n
    cols = []
    for k in range(m):
        for i in range(n):
            for j in range(n):
                if k == 0 and i == j:
                    continue
                E = np.zeros((N, N), dtype=complex)
                E[k * n + i, j] = 1
                cols.append(E.ravel())
    for i in range(n - 1):
        E = np.zeros((N, N), dtype=complex)
        E[i, i], E[i + 1, i + 1] = 1, -1
        cols.append(E.ravel())
    return np.array(cols).T


def _orbit_tangent(X: np.ndarray) -> np.ndarray:
    N = X.shape[0]
    I = np.eye(N)
    ad = np.kron(X, I) - np.kron(I, X.T)
    u, s, _ = np.linalg.svd(ad)
    r = int(np.sum(s > 1e-10 * max(1.0, s[0] if len(s) else 1.0)))
    return u[:, :r]


def slice_transversality_check(m: int, n: int, samples: int = 5, seed=0) -> TransversalityReport:
    """Angles between the orbit tangent and the slice at N+, plus spanning checks at random slice points."""
    N = m * n
    S = np.linalg.qr(_slice_tangent(m, n))[0]
    Np = nilpotent_data(m, n)[0]
    O = _orbit_tangent(Np)
    min_angle = float(np.min(subspace_angles(O, S))) if O.shape[1] else float(np.pi / 2)
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(samples):
        Y = random_slice_element(m, n, rng)
        both = np.hstack([_orbit_tangent(assemble(Y)), S])
        s = np.linalg.svd(both, compute_uv=False)
        worst = min(worst, float(s[N * N - 2] / s[0]))
    return TransversalityReport(min_angle, O.shape[1], S.shape[1], worst, N * N - 1)


def random_slice_element(m: int, n: int, rng, scale: float = 1.0) -> SliceElement:
    blocks = scale * (rng.standard_normal((m, n, n)) + 1j * rng.standard_normal((m, n, n)))
    blocks[0] -= np.trace(blocks[0]) / n * np.eye(n)
    return SliceElement(m, n, tuple(blocks))


def embed_lower(Ybar: SliceElement, tau_bar: BipartiteConfig | None = None, tol: float = 1e-9) -> SliceElement:
    """Append a zero block: the m-block element with Y_m = 0 and lower data Ybar."""
    if tau_bar is not None:
        if np.any(np.abs(tau_bar.values()) <= tol):
            raise ConfigCollision("the lower configuration already contains 0")
    n = Ybar.n
    return SliceElement(Ybar.m + 1, n, Ybar.blocks + (np.zeros((n, n), dtype=complex),))


class FiberSystem:
    """Polynomial equations cutting out a fiber, with auxiliary factors.

    Unknowns x = (Y_1..Y_m, b_1..b_m, c_1..c_m, u_1..u_m), configuration
    tau = (lambda_1..lambda_m, mu_1..mu_m). Equations:

        A(mu_j) - b_j c_j^T = 0     (rank one at each thick value)
        A(lambda_i) u_i = 0         (kernel at each thin value)
        <u_i^ref, u_i> = 1          (scale of u_i)
        trace Y_1 = 0
    """

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.nY = m * n * n
        self.nx = self.nY + 3 * m * n
        self.neq = m * n * n + m * n + m + 1

    def split(self, x):
        m, n = self.m, self.n
        Y = x[: self.nY].reshape(m, n, n)
        rest = x[self.nY:].reshape(3, m, n)
        return Y, rest[0], rest[1], rest[2]

    def pack(self, Y, b, c, u) -> np.ndarray:
        return np.concatenate([np.ravel(Y), np.ravel(b), np.ravel(c), np.ravel(u)]).astype(complex)

    def poly(self, Y) -> MatrixPolynomial:
        return MatrixPolynomial((np.eye(self.n, dtype=complex),) + tuple(-B for B in Y))

    def aux_from_Y(self, Y, tau: BipartiteConfig):
        A = self.poly(Y)
        b, c, u = [], [], []
        for mu in tau.thick:
            U, s, Vh = np.linalg.svd(A(mu))
            b.append(np.sqrt(s[0]) * U[:, 0])
            c.append(np.sqrt(s[0]) * Vh[0])
        for lam in tau.thin:
            _, _, Vh = np.linalg.svd(A(lam))
            u.append(Vh[-1].conj())
        return np.array(b), np.array(c), np.array(u)

    def residual(self, x, tau: BipartiteConfig, uref) -> np.ndarray:
        Y, b, c, u = self.split(x)
        A = self.poly(Y)
        out = []
        for j, mu in enumerate(tau.thick):
            out.append((A(mu) - np.outer(b[j], c[j])).ravel())
        for i, lam in enumerate(tau.thin):
            out.append(A(lam) @ u[i])
        out.append(np.array([np.vdot(uref[i], u[i]) - 1 for i in range(self.m)]))
        out.append(np.array([np.trace(Y[0])]))
        return np.concatenate(out)

    def jacobian(self, x, tau: BipartiteConfig, uref) -> tuple[np.ndarray, np.ndarray]:
        """(dF/dx, dF/dtau) with tau ordered thin then thick."""
        m, n = self.m, self.n
        Y, b, c, u = self.split(x)
        A = self.poly(Y)
        J = np.zeros((self.neq, self.nx), dtype=complex)
        Jt = np.zeros((self.neq, 2 * m), dtype=complex)
        In = np.eye(n)
        ob = self.nY
        oc = ob + m * n
        ou = oc + m * n
        row = 0
        for j, mu in enumerate(tau.thick):
            rows = slice(row, row + n * n)
            for k in range(m):
                J[rows, k * n * n:(k + 1) * n * n] = -(mu ** (m - 1 - k)) * np.eye(n * n)
            J[rows, ob + j * n:ob + (j + 1) * n] = -np.kron(In, c[j][:, None])
            J[rows, oc + j * n:oc + (j + 1) * n] = -np.kron(b[j][:, None], In)
            Jt[rows, m + j] = A.derivative(mu).ravel()
            row += n * n
        for i, lam in enumerate(tau.thin):
            rows = slice(row, row + n)
            for k in range(m):
                J[rows, k * n * n:(k + 1) * n * n] = -(lam ** (m - 1 - k)) * np.kron(In, u[i][None, :])
            J[rows, ou + i * n:ou + (i + 1) * n] = A(lam)
            Jt[rows, i] = A.derivative(lam) @ u[i]
            row += n
        for i in range(m):
            J[row, ou + i * n:ou + (i + 1) * n] = uref[i].conj()
            row += 1
        J[row, : n * n] = np.eye(n).ravel()
        return J, Jt

    def newton(self, x, tau, uref, weights=None, tol=1e-12, maxit=60):
        """Min-norm Newton; ``weights`` (positive, per unknown) randomizes the right inverse."""
        D = np.ones(self.nx) if weights is None else weights
        for _ in range(maxit):
            F = self.residual(x, tau, uref)
            if np.linalg.norm(F) <= tol:
                return x, float(np.linalg.norm(F))
            J, _ = self.jacobian(x, tau, uref)
            y = np.linalg.lstsq(J * D, -F, rcond=None)[0]
            x = x + D * y
        F = self.residual(x, tau, uref)
        return x, float(np.linalg.norm(F))


def diagonal_fiber_point(m: int, n: int, tau: BipartiteConfig) -> SliceElement:
    """A point of the fiber with diagonal blocks: A(mu) = diag(p, ..., p, r).

    p has the thick values as roots, r the thin ones, so the thick kernels
    have dimension n-1 and the thin ones dimension 1.
    """
    p = np.poly(np.array(tau.thick))
    r = np.poly(np.array(tau.thin))
    blocks = []
    for k in range(1, m + 1):
        diag = [-p[k]] * (n - 1) + [-r[k]]
        blocks.append(np.diag(np.array(diag, dtype=complex)))
    blocks[0] = blocks[0] - np.trace(blocks[0]) / n * np.eye(n)
    return SliceElement(m, n, tuple(blocks))


def sample_fiber(m: int, n: int, tau: BipartiteConfig, seed=0, retries: int = 8,
                 noise: float = 0.1, tol: float = 1e-6) -> SliceElement:
    """A point of the fiber over tau, randomized by seed."""
    if m * n > 12:
        raise ValueError("sampler limited to mn <= 12")
    tau = tau.recentered(n)
    if tau.m != m:
        raise ValueError("configuration has the wrong number of values")
    if not tau.is_regular():
        raise ValueError("configuration is not regular")
    rng = np.random.default_rng(seed)
    if m == 1:
        s = -n * tau.thick[0]
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = w * (s / (v @ w))
        return SliceElement(1, n, (git_map(v, w),))
    base = diagonal_fiber_point(m, n, tau)
    system = FiberSystem(m, n)
    for attempt in range(retries):
        g = np.eye(n) + 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        gi = np.linalg.inv(g)
        Y0 = np.array([g @ B @ gi for B in base.blocks])
        scale = noise / (1 + attempt)
        Y0 = Y0 + scale * (rng.standard_normal(Y0.shape) + 1j * rng.standard_normal(Y0.shape))
        b, c, u = system.aux_from_Y(Y0, tau)
        x = system.pack(Y0, b, c, u)
        weights = np.exp(rng.uniform(-0.5, 0.5, system.nx))
        x, res = system.newton(x, tau, u.copy(), weights=weights)
        if res > 1e-8:
            continue
        Y, *_ = system.split(x)
        Y = Y.copy()
        Y[0] -= np.trace(Y[0]) / n * np.eye(n)
        try:
            elem = SliceElement(m, n, tuple(Y))
            if config_error(chi_pi(elem, tol), tau, n) <= tol:
                return elem
        except (SliceError, ValueError):
            continue
    raise NoConvergence(f"no fiber point after {retries} attempts")


def fiber_residual(Y: SliceElement, tau: BipartiteConfig) -> float:
    system = FiberSystem(Y.m, Y.n)
    Yb = np.array(Y.blocks)
    b, c, u = system.aux_from_Y(Yb, tau)
    return float(np.linalg.norm(system.residual(system.pack(Yb, b, c, u), tau, u)))


# The (n+1) x (n+1) model X_{n,d}: dI plus a matrix with reduced data A_red.


def zeta(n: int, d: complex) -> complex:
    return ((n + 1) * d / 2) ** 2


def q_d(A_red: np.ndarray, d: complex) -> complex:
    n = A_red.shape[0]
    diag = np.diag(A_red)[1:]
    s = diag.sum()
    return complex(-A_red[0, 0] - (n + 1) * d * s - s * s)


def q_d_gradient(A_red: np.ndarray, d: complex) -> np.ndarray:
    """Holomorphic gradient dq_d/da_ij."""
    n = A_red.shape[0]
    s = np.diag(A_red)[1:].sum()
    G = np.zeros_like(A_red, dtype=complex)
    G[0, 0] = -1
    for k in range(1, n):
        G[k, k] = -(n + 1) * d - 2 * s
    return G


def build_xnd(n: int, d: complex, A_red: np.ndarray) -> np.ndarray:
    """Assemble the (n+1) x (n+1) matrix with reduced data A_red."""
    A_red = np.asarray(A_red, dtype=complex)
    s = np.diag(A_red)[1:].sum()
    alpha = (-(n + 1) * d - s) / 2
    A = d * np.eye(n + 1, dtype=complex)
    A[0, 0] += alpha
    A[0, 1] = 1
    A[1, 1] += alpha
    A[1, 0] = A_red[0, 0] + alpha ** 2
    A[1, 2:] = A_red[0, 1:]
    A[2:, 0] = A_red[1:, 0]
    A[2:, 2:] += A_red[1:, 1:]
    return A


@dataclass
class ReducedCoords:
    A_red: np.ndarray
    alpha: complex
    s: complex
    z: complex
    q: complex


def reduced_coords(A: np.ndarray, d: complex, tol: float = 1e-9) -> ReducedCoords:
    A = np.asarray(A, dtype=complex)
    n = A.shape[0] - 1
    alpha = A[0, 0] - d
    scale = max(1.0, float(np.abs(A).max()))
    shape_err = max(
        abs(A[0, 1] - 1),
        abs(A[1, 1] - A[0, 0]),
        float(np.abs(A[0, 2:]).max(initial=0)),
        float(np.abs(A[2:, 1]).max(initial=0)),
    )
    if shape_err > tol * scale:
        raise RankViolation("matrix is not in the reduced slice form")
    R = np.zeros((n, n), dtype=complex)
    R[0, 0] = A[1, 0] - alpha ** 2
    R[0, 1:] = A[1, 2:]
    R[1:, 0] = A[2:, 0]
    R[1:, 1:] = A[2:, 2:] - d * np.eye(n - 1)
    sv = np.linalg.svd(R, compute_uv=False)
    if len(sv) > 1 and sv[1] > tol * max(1.0, sv[0]):
        raise RankViolation(f"reduced matrix has rank > 1 (second singular value {sv[1]:.3g})")
    s = np.diag(R)[1:].sum()
    if abs(2 * alpha + s + (n + 1) * d) > tol * scale:
        raise RankViolation("trace condition 2 alpha + s = -(n+1) d fails")
    z = -R[0, 0] - (n + 1) * d * s - s * s
    return ReducedCoords(R, complex(alpha), complex(s), complex(z), q_d(R, d))


def c1_c2(alpha: complex, d: complex, z: complex, n: int) -> tuple[complex, complex]:
    c1 = -z - 2 * (n + 1) * d * alpha - 4 * alpha ** 2
    c2 = -(n + 1) * d - 2 * alpha
    return c1, c2


def singular_alphas(n: int, d: float, z: float) -> tuple[complex, complex, complex]:
    """alpha_1 = -(n+1)d/2 and the roots of 4 alpha^2 + 2(n+1)d alpha + z, ordered by real part."""
    a1 = -(n + 1) * d / 2
    disc = np.sqrt(complex(((n + 1) * d) ** 2 - 4 * z))
    r = sorted([(-(n + 1) * d - disc) / 4, (-(n + 1) * d + disc) / 4], key=lambda x: (x.real, x.imag))
    return complex(a1), complex(r[0]), complex(r[1])
