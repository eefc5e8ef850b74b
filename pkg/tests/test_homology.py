import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotslice.homology import (
    EXAMPLES,
    GradedGroup,
    Piece,
    TorsionTorsionUnsupported,
    check_conjecture_euler,
    cohomology_cpn,
    cohomology_ut_cpn,
    direct_sum,
    euler_characteristic,
    example_group,
    grading_shift,
    gysin_sphere_bundle,
    kr_trefoil,
    kr_trefoil_list,
    kr_trefoil_summands,
    kr_trivial,
    kr_unknot,
    kr_unlink,
    shift,
    tensor,
)
from knotslice.laurent import quantum_integer

free_groups = st.dictionaries(st.integers(-4, 6), st.integers(0, 3), max_size=4).map(
    lambda d: GradedGroup({k: Piece(v) for k, v in d.items()}))
groups = st.dictionaries(
    st.integers(-4, 6),
    st.builds(Piece, st.integers(0, 3), st.lists(st.integers(2, 5), max_size=2).map(tuple)),
    max_size=4,
).map(GradedGroup)


@given(groups, st.integers(-5, 5), st.integers(-5, 5))
def test_shift_composes(G, a, b):
    assert shift(shift(G, a), b) == shift(G, a + b)
    assert shift(G, 0) == G


@given(groups, groups)
def test_direct_sum_euler_additive(G, H):
    assert euler_characteristic(G + H) == euler_characteristic(G) + euler_characteristic(H)
    assert G + H == H + G


@given(free_groups, groups)
def test_tensor_euler_multiplicative(F, G):
    T = tensor(F, G)
    assert euler_characteristic(T) == euler_characteristic(F) * euler_characteristic(G)
    assert T == tensor(G, F)


@given(groups)
def test_json_round_trip(G):
    assert GradedGroup.from_json(G.to_json()) == G


def test_shift_direction():
    G = GradedGroup({0: Piece(1)})
    assert shift(G, 2).degrees() == [-2]
    assert shift(G, -2).degrees() == [2]


def test_torsion_tensor_refused():
    T = GradedGroup({0: Piece(0, (2,))})
    with pytest.raises(TorsionTorsionUnsupported) as exc:
        tensor(T, T)
    assert exc.value.code == "TORSION_TORSION_UNSUPPORTED"
    assert tensor(T, GradedGroup({1: Piece(2)})) == GradedGroup({1: Piece(0, (2, 2))})


def test_piece_validation():
    with pytest.raises(ValueError):
        Piece(-1)
    with pytest.raises(ValueError):
        Piece(0, (1,))
    assert str(Piece(2, (3,))) == "Z^2 + Z/3"
    assert str(GradedGroup()) == "0"


def test_unit_tangent_bundle_of_sphere_is_rp3():
    G = cohomology_ut_cpn(2)
    assert G == GradedGroup({0: Piece(1), 2: Piece(0, (2,)), 3: Piece(1)})


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_unit_tangent_bundle(n):
    G = cohomology_ut_cpn(n)
    # Z/n sits in degree 2n - 2; the Euler characteristic of an odd sphere bundle vanishes
    assert G[2 * n - 2] == Piece(0, (n,))
    assert G.torsion_degrees() == [2 * n - 2]
    assert euler_characteristic(G) == 0
    assert max(G.degrees()) == 4 * n - 5


def test_gysin_trivial_bundle_is_product():
    base = cohomology_cpn(2)
    assert gysin_sphere_bundle(base, 3, 0) == tensor(base, GradedGroup({0: Piece(1), 3: Piece(1)}))
    with pytest.raises(ValueError):
        gysin_sphere_bundle(base, 2, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unknot_poincare_is_quantum_integer(n):
    # CP^{n-1} shifted down by n-1: degrees 1-n, 3-n, ..., n-1
    G = kr_unknot(n)
    assert G.poincare() == quantum_integer(n)
    assert G.degrees() == list(range(-(n - 1), n, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_trefoil_assembly_equals_list(n):
    G = kr_trefoil(n)
    assert G == kr_trefoil_list(n)
    assert G == direct_sum(*kr_trefoil_summands(n))
    assert G[3 * n - 1] == Piece(0, (n,))
    assert G.torsion_degrees() == [3 * n - 1]


def test_trefoil_frozen():
    assert str(kr_trefoil(2)) == "1: Z, 3: Z^2, 5: Z/2, 6: Z"
    # degrees n-1; n+1+2j (rank 2) and 3n+2j for j < n-1; Z/n in 3n-1
    assert kr_trefoil(3).poincare_str() == "t^11 + t^9 + 2*t^6 + 2*t^4 + t^2"
    assert str(kr_trefoil(3)[8]) == "Z/3"
    with pytest.raises(ValueError):
        kr_trefoil(1)


@pytest.mark.parametrize("example", EXAMPLES)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_conjecture_euler(example, n):
    assert check_conjecture_euler(example, n)


def test_unlinks_and_trivial():
    assert kr_unlink(2, 1) == kr_unknot(2)
    assert euler_characteristic(kr_unlink(3, 3)) == 27
    assert example_group("trefoil", 1) == kr_trivial()
    with pytest.raises(ValueError):
        kr_unlink(2, 0)
    with pytest.raises(ValueError):
        example_group("figure8", 2)


def test_grading_shift():
    assert grading_shift(2, -3, 3) == -2
    assert grading_shift(1, 0, 5) == 4
