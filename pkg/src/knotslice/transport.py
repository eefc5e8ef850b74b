"""Parallel transport in fibrations cut out by polynomial equations.

A model supplies unknowns x, optional constraints C(x) = 0, a base map
beta(x) and an ambient embedding E(x) whose coordinates carry the metric.
The horizontal lift of a base velocity is the tangent vector of least
metric norm among those with dC = 0 and d(beta) = velocity. Trajectories
are integrated with an embedded Runge-Kutta pair and Newton-projected back
onto the fiber after every accepted step.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import null_space
from scipy.stats import unitary_group

from .slice import BipartiteConfig, FiberSystem, SliceElement, git_map

COMPLETED = "COMPLETED"
CONVERGED_TO_CRITICAL = "CONVERGED_TO_CRITICAL"
DIVERGED = "DIVERGED"
STEP_FAILURE = "STEP_FAILURE"

VANISHING = "VANISHING"
NON_VANISHING = "NON_VANISHING"
AMBIGUOUS = "AMBIGUOUS"


class TransportError(RuntimeError):
    code = "TRANSPORT_ERROR"


class RankDeficient(TransportError):
    code = "RANK_DEFICIENT"


# Kahler potentials


@dataclass(frozen=True)
class RadialProfile:
    """phi(s), s = |z|^2: s^p outside s0, a quadratic in s inside, matched to second order."""

    p: float
    s0: float = 0.01

    def _coeffs(self):
        p, s0 = self.p, self.s0
        f = s0 ** p
        f1 = p * s0 ** (p - 1)
        f2 = p * (p - 1) * s0 ** (p - 2)
        a2 = f2 / 2
        a1 = f1 - f2 * s0
        a0 = f - a1 * s0 - a2 * s0 ** 2
        return a0, a1, a2

    def phi(self, s):
        s = np.asarray(s, dtype=float)
        a0, a1, a2 = self._coeffs()
        inner = a0 + a1 * s + a2 * s * s
        outer = np.power(np.maximum(s, self.s0), self.p)
        return np.where(s < self.s0, inner, outer)

    def dphi(self, s):
        s = np.asarray(s, dtype=float)
        _, a1, a2 = self._coeffs()
        outer = self.p * np.power(np.maximum(s, self.s0), self.p - 1)
        return np.where(s < self.s0, a1 + 2 * a2 * s, outer)

    def d2phi(self, s):
        s = np.asarray(s, dtype=float)
        _, _, a2 = self._coeffs()
        outer = self.p * (self.p - 1) * np.power(np.maximum(s, self.s0), self.p - 2)
        return np.where(s < self.s0, 2 * a2, outer)

    def metric(self, s):
        """Coefficient of the Kahler metric of phi(|z|^2): phi' + s phi''."""
        return self.dphi(s) + s * self.d2phi(s)


@dataclass(frozen=True)
class KahlerWeights:
    """Block-weighted potential psi = sum_k phi_k(|entries of block k|^2).

    Block j carries the profile of |z|^{alpha/j}, matching the weight 2j of
    the scaling action on that block. With ``standard_metric`` the ambient
    Euclidean metric and psi = sum |z|^2 are used instead.
    """

    alpha: float = 2.0
    m: int = 1
    standard_metric: bool = False
    radius: float = 0.1

    def __post_init__(self):
        if not self.standard_metric and self.alpha <= self.m:
            raise ValueError(f"alpha={self.alpha} must exceed m={self.m}")

    def profile(self, block: int) -> RadialProfile:
        if self.standard_metric:
            return RadialProfile(1.0, self.radius ** 2)
        return RadialProfile(self.alpha / (2 * block), self.radius ** 2)

    def _by_block(self, amb, blocks, fn):
        out = np.empty(len(amb), dtype=float)
        s = np.abs(amb) ** 2
        for k in np.unique(blocks):
            idx = blocks == k
            out[idx] = fn(self.profile(int(k)), s[idx])
        return out

    def metric(self, amb, blocks) -> np.ndarray:
        if self.standard_metric:
            return np.ones(len(amb))
        return self._by_block(amb, blocks, lambda pr, s: pr.metric(s))

    def psi(self, amb, blocks) -> float:
        return float(self._by_block(amb, blocks, lambda pr, s: pr.phi(s)).sum())

    def gradient(self, amb, blocks) -> np.ndarray:
        """Metric gradient of psi in ambient coordinates (real parts paired with imaginary parts)."""
        d = self._by_block(amb, blocks, lambda pr, s: pr.dphi(s))
        return 2 * d * amb / self.metric(amb, blocks)


STANDARD = KahlerWeights(standard_metric=True)


# Models


class FibrationModel:
    nx: int
    nbase: int
    blocks: np.ndarray

    def constraints(self, x) -> tuple[np.ndarray, np.ndarray]:
        return np.zeros(0, dtype=complex), np.zeros((0, self.nx), dtype=complex)

    def base(self, x) -> np.ndarray:
        raise NotImplementedError

    def base_jacobian(self, x) -> np.ndarray:
        raise NotImplementedError

    def embed(self, x) -> np.ndarray:
        raise NotImplementedError

    def embed_jacobian(self, x) -> np.ndarray:
        raise NotImplementedError

    def regauge(self, x) -> np.ndarray:
        return x


class GitModel(FibrationModel):
    """Z = {thick eigenvalue of multiplicity n-1} in sl(n), parametrized by f(v, w); base = thick value."""

    def __init__(self, n: int):
        self.n = n
        self.nx = 2 * n
        self.nbase = 1
        self.blocks = np.ones(n * n, dtype=int)

    def split(self, x):
        return x[: self.n], x[self.n:]

    def base(self, x):
        v, w = self.split(x)
        return np.array([-(v @ w) / self.n])

    def base_jacobian(self, x):
        v, w = self.split(x)
        return -np.concatenate([w, v])[None, :] / self.n

    def embed(self, x):
        v, w = self.split(x)
        return git_map(v, w).ravel()

    def embed_jacobian(self, x):
        n = self.n
        v, w = self.split(x)
        I = np.eye(n)
        Jv = np.kron(I, w[:, None]) - np.outer(np.eye(n).ravel(), w) / n
        Jw = np.kron(v[:, None], I) - np.outer(np.eye(n).ravel(), v) / n
        return np.hstack([Jv, Jw])

    def regauge(self, x):
        v, w = self.split(x)
        nv, nw = np.linalg.norm(v), np.linalg.norm(w)
        if nv == 0 or nw == 0:
            return x
        t = math.sqrt(nw / nv)
        return np.concatenate([v * t, w / t])

    def point(self, Y: np.ndarray, thick: complex) -> np.ndarray:
        """(v, w) with f(v, w) = Y, given the thick eigenvalue of Y."""
        R = np.asarray(Y, dtype=complex) - thick * np.eye(self.n)
        U, sv, Vh = np.linalg.svd(R)
        if len(sv) > 1 and sv[1] > 1e-8 * max(1.0, sv[0]):
            raise ValueError("Y minus its thick value is not rank one")
        r = math.sqrt(sv[0])
        return np.concatenate([U[:, 0] * r, Vh[0] * r])


class SliceModel(FibrationModel):
    """The fibration S_{m,n} -> configurations, in the factorized coordinates of FiberSystem.

    x = (Y, b, c, u, thin values, thick values); the base map reads off the
    configuration. The model keeps per-trajectory normalization vectors for
    the thin kernels, so use one instance per trajectory.
    """

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.system = FiberSystem(m, n)
        self.nx = self.system.nx + 2 * m
        self.nbase = 2 * m
        self.blocks = np.repeat(np.arange(1, m + 1), n * n)
        self.uref = None

    def initial_point(self, Y: SliceElement, tau: BipartiteConfig) -> np.ndarray:
        Yb = np.array(Y.blocks)
        b, c, u = self.system.aux_from_Y(Yb, tau)
        self.uref = u.copy()
        return np.concatenate([self.system.pack(Yb, b, c, u), tau.values()])

    def _tau(self, x):
        t = x[self.system.nx:]
        return BipartiteConfig(tuple(t[: self.m]), tuple(t[self.m:]))

    def constraints(self, x):
        xs = x[: self.system.nx]
        tau = self._tau(x)
        F = self.system.residual(xs, tau, self.uref)
        J, Jt = self.system.jacobian(xs, tau, self.uref)
        return F, np.hstack([J, Jt])

    def base(self, x):
        return x[self.system.nx:].copy()

    def base_jacobian(self, x):
        J = np.zeros((2 * self.m, self.nx), dtype=complex)
        J[:, self.system.nx:] = np.eye(2 * self.m)
        return J

    def embed(self, x):
        return x[: self.system.nY].copy()

    def embed_jacobian(self, x):
        J = np.zeros((self.system.nY, self.nx), dtype=complex)
        J[:, : self.system.nY] = np.eye(self.system.nY)
        return J

    def regauge(self, x):
        Y, b, c, u = self.system.split(x[: self.system.nx])
        b, c, u = b.copy(), c.copy(), u.copy()
        for j in range(self.m):
            nb, nc = np.linalg.norm(b[j]), np.linalg.norm(c[j])
            if nb > 0 and nc > 0:
                t = math.sqrt(nc / nb)
                b[j] *= t
                c[j] /= t
        # reset the normalization so that <uref, u> = 1 still holds
        self.uref = np.array([ui / np.vdot(ui, ui).real for ui in u])
        return np.concatenate([self.system.pack(Y, b, c, u), x[self.system.nx:]])

    def element(self, x) -> SliceElement:
        Y = x[: self.system.nY].reshape(self.m, self.n, self.n).copy()
        Y[0] -= np.trace(Y[0]) / self.n * np.eye(self.n)
        return SliceElement(self.m, self.n, tuple(Y))


# Base paths


@dataclass
class BasePath:
    """s -> base value on [0, 1], optionally with an exact derivative."""

    func: Callable[[float], np.ndarray]
    deriv: Callable[[float], np.ndarray] | None = None
    breaks: tuple[float, ...] = ()

    def __call__(self, s: float) -> np.ndarray:
        return np.atleast_1d(np.asarray(self.func(s), dtype=complex))

    def velocity(self, s: float) -> np.ndarray:
        if self.deriv is not None:
            return np.atleast_1d(np.asarray(self.deriv(s), dtype=complex))
        h = 1e-6
        lo, hi = max(0.0, s - h), min(1.0, s + h)
        return (self(hi) - self(lo)) / (hi - lo)

    @classmethod
    def segment(cls, a, b) -> BasePath:
        a = np.atleast_1d(np.asarray(a, dtype=complex))
        b = np.atleast_1d(np.asarray(b, dtype=complex))
        return cls(lambda s: a + s * (b - a), lambda s: b - a)

    @classmethod
    def concat(cls, paths: Sequence[BasePath]) -> BasePath:
        k = len(paths)

        def locate(s):
            i = min(int(s * k), k - 1)
            return paths[i], s * k - i

        def func(s):
            p, u = locate(s)
            return p(u)

        def deriv(s):
            p, u = locate(s)
            return k * p.velocity(u)

        return cls(func, deriv, tuple(i / k for i in range(1, k)))


def thick_config_path(n: int, m_values: Callable[[float], complex], dm: Callable[[float], complex]) -> BasePath:
    """m = 1 slice path with thick value mu(s) and thin value (1-n) mu(s)."""
    return BasePath(
        lambda s: np.array([(1 - n) * m_values(s), m_values(s)]),
        lambda s: np.array([(1 - n) * dm(s), dm(s)]),
    )


# Lift and projection


def _min_norm_constrained(K, rhs, A, target=None, rtol=1e-9):
    """argmin ||A dx - target|| subject to K dx = rhs, and the consistency residual of K dx = rhs."""
    dx0, *_ = np.linalg.lstsq(K, rhs, rcond=None)
    cons = float(np.linalg.norm(K @ dx0 - rhs))
    smax = np.linalg.norm(K, 2) if K.size else 1.0
    N = null_space(K, rcond=rtol) if K.size else np.eye(A.shape[1])
    goal = -A @ dx0 if target is None else target - A @ dx0
    if N.shape[1]:
        # directions the metric does not see (gauge) get the minimum-norm choice
        y, *_ = np.linalg.lstsq(A @ N, goal, rcond=1e-10)
        dx = dx0 + N @ y
    else:
        dx = dx0
    return dx, cons / max(1.0, smax)


def _lift_system(model: FibrationModel, x):
    _, JC = model.constraints(x)
    JB = model.base_jacobian(x)
    K = np.vstack([JC, JB])
    return K, JC.shape[0]


def horizontal_lift(model: FibrationModel, x, tau_dot, weights: KahlerWeights = STANDARD):
    """Least-metric-norm tangent vector projecting to tau_dot; returns (dx, ambient tangent)."""
    tau_dot = np.atleast_1d(np.asarray(tau_dot, dtype=complex))
    K, nc = _lift_system(model, x)
    rhs = np.concatenate([np.zeros(nc, dtype=complex), tau_dot])
    E = model.embed_jacobian(x)
    W = np.sqrt(weights.metric(model.embed(x), model.blocks))
    dx, incons = _min_norm_constrained(K, rhs, W[:, None] * E)
    if incons > 1e-8 * max(1.0, np.linalg.norm(tau_dot)):
        raise RankDeficient(f"base velocity not attainable (residual {incons:.3g})")
    return dx, E @ dx


def fiber_gradient(model: FibrationModel, x, weights: KahlerWeights):
    """Metric projection of grad psi onto the fiber tangent space."""
    K, nc = _lift_system(model, x)
    amb = model.embed(x)
    G = weights.gradient(amb, model.blocks)
    E = model.embed_jacobian(x)
    W = np.sqrt(weights.metric(amb, model.blocks))
    dx, _ = _min_norm_constrained(K, np.zeros(K.shape[0], dtype=complex), W[:, None] * E, W * G)
    return dx


def fiber_residual(model: FibrationModel, x, tau) -> float:
    C, _ = model.constraints(x)
    return float(np.linalg.norm(np.concatenate([C, model.base(x) - np.atleast_1d(tau)])))


def project(model: FibrationModel, x, tau, tol=1e-12, maxit=30):
    """Min-norm Newton onto {C = 0, beta = tau}."""
    tau = np.atleast_1d(np.asarray(tau, dtype=complex))
    for _ in range(maxit):
        C, JC = model.constraints(x)
        F = np.concatenate([C, model.base(x) - tau])
        if np.linalg.norm(F) <= tol:
            break
        J = np.vstack([JC, model.base_jacobian(x)])
        x = x - np.linalg.lstsq(J, F, rcond=None)[0]
    return x, fiber_residual(model, x, tau)


# Integration

# Dormand-Prince 5(4)
_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1, 1])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
_B4 = np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])


@dataclass
class StepControl:
    rtol: float = 1e-9
    atol: float = 1e-11
    h0: float = 0.02
    hmin: float = 1e-12
    hmax: float = 0.1
    residual_bound: float = 1e-8
    diverge_norm: float = 1e6
    max_steps: int = 20000


@dataclass
class TransportTrace:
    s: list = field(default_factory=list)
    points: list = field(default_factory=list)
    ambient: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    psi: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    status: str = COMPLETED
    message: str = ""

    @property
    def final(self):
        return self.points[-1]

    @property
    def final_ambient(self):
        return self.ambient[-1]

    def norms(self):
        return [float(np.linalg.norm(a)) for a in self.ambient]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "residual", "psi", "norm", "flags"])
        for s, r, p, nrm, f in zip(self.s, self.residuals, self.psi, self.norms(), self.flags):
            w.writerow([f"{s:.12g}", f"{r:.12g}", f"{p:.12g}", f"{nrm:.12g}", f])
        return buf.getvalue()


def _integrate(model, x0, rhs, path: BasePath, weights, control: StepControl, s_end=1.0,
               checkpoints=(), s_start=0.0):
    trace = TransportTrace()
    x, res = project(model, model.regauge(x0), path(s_start))
    if res > control.residual_bound:
        trace.status = STEP_FAILURE
        trace.message = f"initial point off the fiber (residual {res:.3g})"
        return trace

    def record(s, x, res, flag=""):
        amb = model.embed(x)
        trace.s.append(float(s))
        trace.points.append(x.copy())
        trace.ambient.append(amb)
        trace.residuals.append(res)
        trace.psi.append(weights.psi(amb, model.blocks))
        trace.flags.append(flag)

    record(s_start, x, res, "start")
    stops = sorted(set([c for c in checkpoints if s_start < c < s_end] + list(path.breaks)))
    stops = [c for c in stops if s_start < c < s_end] + [s_end]
    s = s_start
    h = min(control.h0, s_end - s_start)
    steps = 0
    for stop in stops:
        while s < stop - 1e-15:
            steps += 1
            if steps > control.max_steps:
                trace.status = STEP_FAILURE
                trace.message = "step budget exhausted"
                return trace
            h = min(h, stop - s, control.hmax)
            try:
                k = []
                for i in range(7):
                    xi = x + h * sum(a * kj for a, kj in zip(_A[i], k))
                    k.append(rhs(s + _C[i] * h, xi))
                x5 = x + h * sum(b * kj for b, kj in zip(_B5, k))
                x4 = x + h * sum(b * kj for b, kj in zip(_B4, k))
            except RankDeficient as exc:
                trace.status = CONVERGED_TO_CRITICAL
                trace.message = str(exc)
                return trace
            scale = control.atol + control.rtol * np.maximum(np.abs(x), np.abs(x5))
            err = float(np.sqrt(np.mean(np.abs((x5 - x4) / scale) ** 2)))
            if not np.isfinite(err):
                err = np.inf
            if err <= 1.0:
                xn, res = project(model, x5, path(s + h))
                if res > control.residual_bound:
                    h /= 2
                else:
                    s = s + h
                    x = model.regauge(xn)
                    flag = "checkpoint" if abs(s - stop) < 1e-15 and stop in checkpoints else ""
                    record(s, x, res, flag)
                    if np.linalg.norm(trace.ambient[-1]) > control.diverge_norm:
                        trace.status = DIVERGED
                        return trace
                    fac = 0.9 * err ** (-0.2) if err > 0 else 5.0
                    h *= min(5.0, max(0.2, fac))
                    continue
            else:
                h *= max(0.2, 0.9 * err ** (-0.25))
            if h < control.hmin:
                trace.status = STEP_FAILURE
                trace.message = f"step size underflow at s={s:.6g}"
                return trace
    trace.flags[-1] = (trace.flags[-1] + " end").strip()
    return trace


def naive_transport(model: FibrationModel, x0, path: BasePath, weights: KahlerWeights = STANDARD,
                    control: StepControl | None = None, s_end: float = 1.0, checkpoints=()):
    control = control or StepControl()

    def rhs(s, x):
        return horizontal_lift(model, x, path.velocity(s), weights)[0]

    return _integrate(model, x0, rhs, path, weights, control, s_end, checkpoints)


def rescaled_transport(model: FibrationModel, x0, path: BasePath, weights: KahlerWeights, sigma: float,
                       control: StepControl | None = None):
    """Flow H - sigma Z along the path, then the time-sigma fiberwise Liouville flow at the end."""
    control = control or StepControl()
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")

    def rhs(s, x):
        dx = horizontal_lift(model, x, path.velocity(s), weights)[0]
        if sigma:
            dx = dx - sigma * fiber_gradient(model, x, weights)
        return dx

    trace = _integrate(model, x0, rhs, path, weights, control)
    if sigma == 0 or trace.status != COMPLETED:
        return trace
    end = path(1.0)
    fixed = BasePath(lambda s: end, lambda s: np.zeros_like(end))

    def liouville(s, x):
        return sigma * fiber_gradient(model, x, weights)

    tail = _integrate(model, trace.final, liouville, fixed, weights, control)
    for attr in ("points", "ambient", "residuals", "psi"):
        getattr(trace, attr).extend(getattr(tail, attr)[1:])
    trace.s.extend(1.0 + sigma * np.array(tail.s[1:]))
    trace.flags.extend(["liouville"] * (len(tail.s) - 1))
    trace.status = tail.status
    trace.message = tail.message
    return trace


# Vanishing projective spaces in the m = 1 model


def e_matrix(n: int, t: complex) -> np.ndarray:
    """E_t = diag(t, ..., t, (1-n) t)."""
    return np.diag([t] * (n - 1) + [(1 - n) * t]).astype(complex)


def m1_point(n: int, Y: np.ndarray, thick: complex) -> tuple[GitModel, np.ndarray]:
    """The m = 1 fiber in (v, w) coordinates, which stay regular at nonzero nilpotent limits."""
    model = GitModel(n)
    return model, model.point(Y, thick)


def radial_path(n: int, t: complex, end_fraction: float = 0.0) -> BasePath:
    """Thick value t (1 - s (1 - end_fraction))."""
    rate = -(1 - end_fraction) * t
    return BasePath(lambda s: t + rate * s, lambda s: rate)


def transport_m1(n: int, Y: np.ndarray, t: complex, end_fraction: float, weights=STANDARD,
                 control=None, checkpoints=(), s_end=1.0) -> TransportTrace:
    model, x = m1_point(n, Y, t)
    return naive_transport(model, x, radial_path(n, t, end_fraction), weights, control,
                           s_end=s_end, checkpoints=checkpoints)


def rex_deviation(n: int, t: float = 0.5, end_fraction: float = 0.1, seed=None) -> float:
    """Transport U E_t U^* radially to end_fraction * t and compare with U E_{end t} U^*."""
    U = np.eye(n) if seed is None else unitary_group.rvs(n, random_state=seed)
    start = U @ e_matrix(n, t) @ U.conj().T
    trace = transport_m1(n, start, t, end_fraction)
    if trace.status != COMPLETED:
        raise TransportError(f"transport ended with {trace.status}: {trace.message}")
    target = U @ e_matrix(n, end_fraction * t) @ U.conj().T
    return float(np.abs(trace.final_ambient.reshape(n, n) - target).max())


LADDER = (1e-3, 1e-4, 1e-5)


@dataclass
class VanishingResult:
    classification: str
    norms: dict
    thresholds: dict


def vanishing_classification(n: int, Y: np.ndarray, t: complex, weights=STANDARD, ladder=LADDER,
                             threshold: float = 1e-4, control=None) -> VanishingResult:
    """Transport along (1-s) t and read off the norm at s = 1 - eps for each rung eps.

    A rung counts as converging to 0 when the norm is at most
    threshold * eps / min(ladder): orbit points shrink linearly in eps.
    """
    eps_min = min(ladder)
    control = control or StepControl()
    checkpoints = sorted(1 - e for e in ladder)
    model, x = m1_point(n, Y, t)
    trace = naive_transport(model, x, radial_path(n, t, 0.0), weights, control,
                            s_end=1 - eps_min, checkpoints=checkpoints)
    norms, limits, verdicts = {}, {}, []
    for eps in ladder:
        target = 1 - eps
        idx = int(np.argmin(np.abs(np.array(trace.s) - target)))
        if abs(trace.s[idx] - target) > 1e-12:
            norms[eps] = float("nan")
            verdicts.append(None)
            continue
        norms[eps] = float(np.linalg.norm(trace.ambient[idx]))
        limits[eps] = threshold * eps / eps_min
        verdicts.append(norms[eps] <= limits[eps])
    if all(v is True for v in verdicts):
        cls = VANISHING
    elif all(v is False for v in verdicts):
        cls = NON_VANISHING
    else:
        cls = AMBIGUOUS
    return VanishingResult(cls, norms, limits)


def vanishing_cp_samples(n: int, t: complex, count: int, weights=STANDARD, seed=0,
                         control=None) -> list[np.ndarray]:
    """Points of the vanishing set in the fiber over t.

    Standard metric: unitary conjugates of E_t. Otherwise seeds near 0 on the
    orbit of E_{eps t} are flowed back out to t, with eps refined until the
    forward flow returns them to 0.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        U = unitary_group.rvs(n, random_state=rng)
        if weights.standard_metric:
            out.append(U @ e_matrix(n, t) @ U.conj().T)
            continue
        found = None
        for eps in (1e-2, 1e-3, 1e-4):
            Y0 = U @ e_matrix(n, eps * t) @ U.conj().T
            model, x = m1_point(n, Y0, eps * t)
            path = BasePath(lambda s, e=eps: t * (e + (1 - e) * s), lambda s, e=eps: t * (1 - e))
            back = naive_transport(model, x, path, weights, control)
            if back.status != COMPLETED:
                continue
            cand = back.final_ambient.reshape(n, n)
            if vanishing_classification(n, cand, t, weights, control=control).classification == VANISHING:
                found = cand
                break
        if found is None:
            raise TransportError("shooting did not find a vanishing point")
        out.append(found)
    return out


def off_orbit_point(n: int, t: complex, offset: float = 1.0, seed=0) -> np.ndarray:
    """A point of the fiber over t away from the unitary orbit of E_t: E_t plus a nilpotent corner."""
    U = unitary_group.rvs(n, random_state=seed)
    Y = e_matrix(n, t)
    Y[0, n - 1] = offset
    return U @ Y @ U.conj().T


def orbit_distance(Y: np.ndarray, n: int, t: complex) -> float:
    """Lower bound for the distance from Y to the unitary orbit of E_t (Frobenius norms)."""
    return abs(np.linalg.norm(Y) - np.linalg.norm(e_matrix(n, t)))
