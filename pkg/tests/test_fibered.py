import json

import numpy as np
import pytest

from knotslice.fibered import (
    C_GRID,
    EXPECTED_DIM,
    POINT,
    PROJECTIVE,
    SPHERE,
    PathError,
    XndModel,
    alpha_for_c,
    check_alpha_path,
    classify_c,
    fiber_point,
    gradient_bound_scan,
    lambda_path_samples,
    moment_chart,
    moment_equations,
    moment_fiber,
    moment_fiber_c,
    monodromy_path,
    monodromy_swap,
    project_to_fiber,
    restricted_gradient_sq,
    trefoil_intersection_report,
    trefoil_paths,
    vanishing_orbit_dimension,
)
from knotslice.slice import c1_c2, q_d, singular_alphas, zeta
from knotslice.transport import BasePath, horizontal_lift


def test_xnd_model_base():
    rng = np.random.default_rng(0)
    n, d = 3, 0.2
    model = XndModel(n, d)
    x = rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)
    assert model.base(x)[0] == pytest.approx(q_d(model.a_red(x), d))
    h = 1e-7
    u = rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)
    fd = (model.base(x + h * u) - model.base(x - h * u)) / (2 * h)
    assert fd == pytest.approx(model.base_jacobian(x) @ u, rel=1e-6)
    dx, _ = horizontal_lift(model, x, np.array([1.0]))
    assert model.base_jacobian(x) @ dx == pytest.approx([1.0])


def test_restricted_gradient_is_scale_invariant_in_direction():
    rng = np.random.default_rng(1)
    n, d = 3, 0.1
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    g = restricted_gradient_sq(n, d, v, w)
    assert g > 0
    # the gradient at A_red = 0 is nonzero, so the restriction stays bounded below near 0
    assert restricted_gradient_sq(n, d, 1e-4 * v, 1e-4 * w) > 0.1 * min(g, 1.0)


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("d", [0.1, 0.5])
def test_gradient_bound(n, d):
    a = gradient_bound_scan(n, d, 1000, seed=0)
    b = gradient_bound_scan(n, d, 2000, seed=1)
    assert a.nu > 0 and b.nu > 0
    assert max(a.nu, b.nu) <= 2 * min(a.nu, b.nu)
    assert a.samples == 1000
    assert a.argmin.shape == (n, n)


def test_gradient_scan_rejects_zero_d():
    with pytest.raises(ValueError):
        gradient_bound_scan(3, 0.0)


def test_classify_chart():
    assert classify_c(0.3, 0) == POINT
    assert classify_c(0, 0) == POINT
    assert classify_c(0, 0.3) == PROJECTIVE
    assert classify_c(0.3, -0.2 + 0.4j) == SPHERE
    assert [EXPECTED_DIM[k](4) for k in (POINT, PROJECTIVE, SPHERE)] == [0, 4, 5]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fiber_points_solve_equations(n):
    rng = np.random.default_rng(n)
    for c1 in C_GRID:
        for c2 in C_GRID:
            x = fiber_point(n, c1, c2, rng)
            assert np.linalg.norm(moment_equations(x, n, c1, c2)) < 1e-12
            y = project_to_fiber(x + 1e-3 * rng.standard_normal(len(x)), n, c1, c2)
            assert np.linalg.norm(moment_equations(y, n, c1, c2)) < 1e-10


def test_alpha_for_c_inverts_c1_c2():
    n, d = 3, 0.3
    for c1 in C_GRID:
        for c2 in C_GRID:
            alpha, z = alpha_for_c(n, d, c1, c2)
            assert c1_c2(alpha, d, z, n) == pytest.approx((c1, c2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_moment_chart(n):
    for f in moment_chart(n):
        assert f.dimension == f.expected_dimension
        assert f.stable
        assert f.residual < 1e-10
    js = json.dumps(moment_chart(2)[4].to_json())
    assert "SPHERE" in js


def test_moment_fiber_at_singular_alphas():
    n, d, z = 3, 0.3, 0.01
    a1, a2, a3 = singular_alphas(n, d, z)
    assert moment_fiber(n, d, z, a1).classification == POINT
    assert moment_fiber(n, d, z, a2).classification == PROJECTIVE
    f = moment_fiber(n, d, z, a3)
    assert f.classification == PROJECTIVE and f.dimension == 2 * n - 4
    assert moment_fiber_c(5, 0.3, 0.2).dimension == 7


def test_alpha_path_validation():
    n, d, z = 3, 0.3, 0.01
    a1, a2, a3 = singular_alphas(n, d, z)
    assert check_alpha_path(n, d, z, BasePath.segment(a1, a2)) == "alpha2"
    with pytest.raises(PathError, match="zero length"):
        check_alpha_path(n, d, z, BasePath.segment(a1, a1))
    with pytest.raises(PathError, match="start"):
        check_alpha_path(n, d, z, BasePath.segment(a2, a3))
    with pytest.raises(PathError, match="end"):
        check_alpha_path(n, d, z, BasePath.segment(a1, 0.5))
    # straight to alpha_3 passes through alpha_2
    with pytest.raises(PathError, match="interior"):
        check_alpha_path(n, d, z, BasePath.segment(a1, a3))
    assert PathError("x").code == "INVALID_PATH"


def test_lambda_path_layers():
    n, d, z = 3, 0.3, 0.01
    a1, a2, _ = singular_alphas(n, d, z)
    layered = lambda_path_samples(n, d, z, BasePath.segment(a1, a2))
    assert layered.profile == [POINT] + [SPHERE] * 5 + [PROJECTIVE]
    assert layered.endpoint == "alpha2"
    # a sphere bundle over an arc: 2n - 3 fiber directions plus one along the path
    assert layered.total_dimension == 2 * n - 2


@pytest.mark.parametrize("n", [2, 3])
def test_trefoil_paths(n):
    d, z = 0.3, 0.01
    paths = trefoil_paths(n, d, z)
    a1, a2, a3 = paths.alphas
    assert paths.delta1[0] == pytest.approx(a1) and paths.delta1[-1] == pytest.approx(a2)
    assert paths.delta3[0] == pytest.approx(a1) and paths.delta3[-1] == pytest.approx(a3)
    kinds = sorted(i.kind for i in paths.intersections)
    assert kinds == ["endpoint", "interior"]
    interior = next(i for i in paths.intersections if i.kind == "interior")
    assert 0 < interior.param_delta1 < 1
    assert interior.angle > 0.5


@pytest.mark.parametrize("n", [2, 3])
def test_trefoil_report(n):
    rep = trefoil_intersection_report(n, 0.3, 0.01)
    dims = [s["fiber_dimension"] for s in rep.strata]
    assert dims == [0, 2 * n - 3]
    assert [s["fiber"] for s in rep.strata] == [POINT, SPHERE]
    assert all(s["base_dimension"] == 2 * n - 2 for s in rep.strata)
    assert rep.to_json()["intersection_count"] == 2


def test_trefoil_regime_checks():
    with pytest.raises(PathError):
        trefoil_paths(3, 0.3, 10.0)
    with pytest.raises(PathError):
        trefoil_paths(3, 0.3, -0.01)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vanishing_orbit_dimension(n):
    # U(n) / (U(n-1) x U(1)) = CP^{n-1}
    assert vanishing_orbit_dimension(n) == 2 * n - 2


def test_monodromy_swaps_thin_eigenvalues():
    n, d, z = 2, 0.3, 0.01
    path = monodromy_path(n, d, z)
    assert path(0.0)[0] == pytest.approx(z) and path(1.0)[0] == pytest.approx(z)
    loop = np.array([path(s)[0] for s in np.linspace(1 / 3, 2 / 3, 200)])
    assert np.all(np.abs(loop - zeta(n, d)) == pytest.approx(zeta(n, d) / 2))
    res = monodromy_swap(n, d, z)
    assert res.status == "COMPLETED"
    assert res.swapped
