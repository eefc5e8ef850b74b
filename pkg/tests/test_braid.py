import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotslice.braid import (
    BraidParseError,
    BraidWord,
    closure_summary,
    markov_conjugate,
    markov_stabilize,
    mirror,
    parse_braid,
    random_braid,
    trefoil,
    unlink,
    writhe,
)


@st.composite
def braids(draw, max_strands=5, max_len=10):
    m = draw(st.integers(1, max_strands))
    if m == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(st.integers(1, m - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=max_len))
    return BraidWord(m, tuple(letters))


@given(braids())
def test_text_round_trip(b):
    assert parse_braid(b.to_text()) == b


@given(braids())
def test_writhe_is_signed_length(b):
    assert writhe(b) == sum(1 if x > 0 else -1 for x in b.letters)
    assert writhe(mirror(b)) == -writhe(b)


@given(braids())
def test_permutation_is_a_permutation(b):
    assert sorted(b.permutation()) == list(range(b.strands))


@given(braids(), st.data())
def test_markov_moves_keep_components(b, data):
    comps = closure_summary(b).components
    if b.strands > 1:
        k = data.draw(st.integers(1, b.strands - 1))
        assert closure_summary(markov_conjugate(b, k)).components == comps
    sign = data.draw(st.sampled_from((1, -1)))
    s = markov_stabilize(b, sign)
    assert s.strands == b.strands + 1
    assert closure_summary(s).components == comps
    assert writhe(s) == writhe(b) + sign


def test_parse_examples():
    assert parse_braid("B1:") == BraidWord(1, ())
    assert parse_braid("B1: ") == BraidWord(1, ())
    assert parse_braid("B2:-1,-1,-1") == trefoil()
    assert parse_braid(" B3: 1, -2 ,1") == BraidWord(3, (1, -2, 1))


@pytest.mark.parametrize("text,pos", [
    ("2:1", 0),
    ("B2:0", 3),
    ("B2:2", 3),
    ("B3:1,,2", 5),
    ("B3:1;2", 4),
    ("B2:-1,x", 6),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(BraidParseError) as exc:
        parse_braid(text)
    assert exc.value.position == pos


def test_letters_validated():
    with pytest.raises(ValueError):
        BraidWord(2, (2,))
    with pytest.raises(ValueError):
        BraidWord(0, ())


def test_closures():
    assert closure_summary(trefoil()).components == 1
    assert closure_summary(BraidWord(2, (1, 1))).components == 2
    assert closure_summary(unlink(3)).components == 3
    assert writhe(trefoil()) == -3
    assert trefoil("positive") == BraidWord(2, (1, 1, 1))
    with pytest.raises(ValueError):
        trefoil("other")


def test_random_braid_is_seeded():
    assert random_braid(4, 12, seed=5) == random_braid(4, 12, seed=5)
    b = random_braid(4, 12, seed=5)
    assert len(b) == 12 and b.strands == 4
