import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotslice.slice import (
    BipartiteConfig,
    ConfigCollision,
    MultiplicityMismatch,
    RankViolation,
    SemisimplicityFail,
    SliceElement,
    assemble,
    build_xnd,
    c1_c2,
    chi_pi,
    config_error,
    diagonal_fiber_point,
    embed_lower,
    fiber_residual,
    git_map,
    lambda_action,
    matrix_polynomial,
    newl_margin,
    q_d,
    q_d_gradient,
    random_slice_element,
    reduced_coords,
    sample_fiber,
    singular_alphas,
    slice_transversality_check,
    zeta,
)

CONFIGS = {
    (1, 3): BipartiteConfig((1.2,), (-0.6,)),
    (2, 2): BipartiteConfig((1.0, -0.3 + 0.5j), (0.4j, -1.1)),
    (2, 3): BipartiteConfig((1.0, 0.5j), (-0.7, 0.3 - 0.4j)),
    (3, 2): BipartiteConfig((1.0, -1.0, 0.5j), (2.0, -0.5j, 0.3 + 0.3j)),
}


def test_slice_element_validation():
    with pytest.raises(ValueError, match="trace"):
        SliceElement(1, 2, (np.eye(2),))
    with pytest.raises(ValueError):
        SliceElement(2, 2, (np.zeros((2, 2)),))
    with pytest.raises(ValueError):
        SliceElement(1, 2, (np.array([[np.nan, 0], [0, 0]]),))
    Y = random_slice_element(2, 3, np.random.default_rng(0))
    assert SliceElement.from_json(Y.to_json()).vector() == pytest.approx(Y.vector())
    assert SliceElement.from_vector(2, 3, Y.vector()).vector() == pytest.approx(Y.vector())


def test_char_poly_matches_block_determinant():
    """det(mu I - X) equals det A(mu) for the block companion form."""
    rng = np.random.default_rng(3)
    Y = random_slice_element(3, 2, rng)
    X = assemble(Y)
    A = matrix_polynomial(Y)
    for mu in (0.3, -1.2 + 0.4j, 2j):
        assert np.linalg.det(mu * np.eye(6) - X) == pytest.approx(A.det(mu), rel=1e-9)
        h = 1e-6
        fd = (A(mu + h) - A(mu - h)) / (2 * h)
        assert np.abs(fd - A.derivative(mu)).max() < 1e-6


@pytest.mark.parametrize("key", list(CONFIGS))
def test_diagonal_point_and_chi(key):
    m, n = key
    tau = CONFIGS[key].recentered(n)
    Y = diagonal_fiber_point(m, n, tau)
    assert config_error(chi_pi(Y), tau, n) < 1e-8
    assert fiber_residual(Y, tau) < 1e-8


@pytest.mark.parametrize("key", [(1, 3), (2, 2), (2, 3)])
@pytest.mark.parametrize("seed", range(4))
def test_sample_fiber_round_trip(key, seed):
    m, n = key
    tau = CONFIGS[key].recentered(n)
    Y = sample_fiber(m, n, tau, seed=seed)
    assert config_error(chi_pi(Y), tau, n) <= 1e-6
    assert newl_margin(Y) > 1e-8


def test_sample_fiber_is_seeded_and_random():
    tau = CONFIGS[(2, 3)].recentered(3)
    a = sample_fiber(2, 3, tau, seed=1).vector()
    b = sample_fiber(2, 3, tau, seed=1).vector()
    c = sample_fiber(2, 3, tau, seed=2).vector()
    assert np.array_equal(a, b)
    assert np.abs(a - c).max() > 1e-6


def test_sampler_limit():
    with pytest.raises(ValueError, match="mn <= 12"):
        sample_fiber(4, 4, BipartiteConfig((1, 2, 3, 4), (5, 6, 7, 8)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.3, 2.0), st.floats(0, 2 * np.pi))
def test_lambda_action_scales_configuration(seed, radius, phase):
    tau = CONFIGS[(2, 3)].recentered(3)
    Y = diagonal_fiber_point(2, 3, tau)
    r = radius * np.exp(1j * phase)
    scaled = chi_pi(lambda_action(r, Y))
    assert config_error(scaled, tau.scaled(r ** 2), 3) < 1e-7


def test_git_map_eigenvalues():
    rng = np.random.default_rng(0)
    for n in (2, 3, 4):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        Y = git_map(v, w)
        vw = v @ w
        assert abs(np.trace(Y)) < 1e-12
        eigs = np.linalg.eigvals(Y)
        thin = (n - 1) * vw / n
        assert np.min(np.abs(eigs - thin)) < 1e-10
        assert np.sum(np.abs(eigs + vw / n) < 1e-8) == n - 1


def test_multiplicity_errors():
    # Jordan block at a thick value of multiplicity n - 1
    Y = SliceElement(1, 3, (np.array([[0.5, 1, 0], [0, 0.5, 0], [0, 0, -1.0]]),))
    with pytest.raises(SemisimplicityFail):
        chi_pi(Y)
    Y = SliceElement(1, 4, (np.diag([1.0, 1.0, -1.0, -1.0]),))
    with pytest.raises(MultiplicityMismatch):
        chi_pi(Y)
    with pytest.raises(ValueError):
        chi_pi(SliceElement(1, 1, (np.zeros((1, 1)),)))


def test_coincident_values():
    Y = SliceElement(2, 2, (np.zeros((2, 2)), np.eye(2)))
    cfg = chi_pi(Y, allow_coincident=True)
    assert sorted(np.round(cfg.values().real, 9)) == [-1, -1, 1, 1]


def test_embed_lower():
    tau = BipartiteConfig((1.0,), (-0.5,))
    Y = diagonal_fiber_point(1, 3, tau)
    Z = embed_lower(Y, tau)
    assert Z.m == 2 and np.abs(Z.blocks[1]).max() == 0
    with pytest.raises(ConfigCollision):
        embed_lower(Y, BipartiteConfig((0.0,), (1.0,)))


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_transversality(m, n):
    rep = slice_transversality_check(m, n, samples=3)
    assert rep.ok
    assert rep.slice_dim == m * n * n - 1
    assert rep.min_angle > 1e-6


def test_config_helpers():
    tau = BipartiteConfig((1.0, 2.0), (3.0, 4.0))
    assert tau.recentered(3).trace(3) == pytest.approx(0)
    assert tau.is_regular()
    assert not BipartiteConfig((1.0,), (1.0,)).is_regular()
    with pytest.raises(ValueError):
        BipartiteConfig((1.0,), ())


# the (n+1) x (n+1) model


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_round_trip(n):
    rng = np.random.default_rng(n)
    d = 0.3
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    A_red = 0.5 * np.outer(v, w)
    X = build_xnd(n, d, A_red)
    rc = reduced_coords(X, d)
    assert np.abs(rc.A_red - A_red).max() < 1e-12
    assert rc.z == pytest.approx(q_d(A_red, d))
    assert rc.q == pytest.approx(rc.z)
    # 2 alpha + s = -(n + 1) d cancels the d I part, so X lies in sl(n + 1)
    assert abs(np.trace(X)) < 1e-12


def test_reduced_coords_rejects_rank_two():
    n, d = 3, 0.3
    X = build_xnd(n, d, np.diag([0.1, 0.2, 0.3]).astype(complex))
    with pytest.raises(RankViolation):
        reduced_coords(X, d)
    X[0, 1] = 2.0
    with pytest.raises(RankViolation):
        reduced_coords(X, d)


def test_q_d_gradient_matches_finite_differences():
    rng = np.random.default_rng(1)
    n, d = 3, 0.2 + 0.1j
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    G = q_d_gradient(A, d)
    h = 1e-6
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = h
            fd = (q_d(A + E, d) - q_d(A - E, d)) / (2 * h)
            assert abs(fd - G[i, j]) < 1e-7


@pytest.mark.parametrize("n", [2, 3, 5])
def test_singular_alphas(n):
    d, z = 0.3, 0.01
    a1, a2, a3 = singular_alphas(n, d, z)
    assert c1_c2(a1, d, z, n)[1] == pytest.approx(0)
    assert abs(c1_c2(a2, d, z, n)[0]) < 1e-12
    assert abs(c1_c2(a3, d, z, n)[0]) < 1e-12
    assert a1.real < a2.real < a3.real < 0
    assert zeta(n, d) == pytest.approx(((n + 1) * d / 2) ** 2)
    # at z = zeta the two roots collide at alpha_1 / 2
    b2, b3 = singular_alphas(n, d, zeta(n, d))[1:]
    assert b2 == pytest.approx(b3)
