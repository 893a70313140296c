import pytest
from helpers import brute_members, index_set_args, index_sets, rule_member
from hypothesis import given, settings
from hypothesis import strategies as st

from app import converters, errors
from app.classes.index_set import IndexSet

EVENS = IndexSet.progression(0, 2)
ODDS = IndexSet.progression(1, 2)


def test_named_sets():
    assert 0 in IndexSet.naturals() and -1 not in IndexSet.naturals()
    assert IndexSet.integers().gap_sizes() == {1}
    assert IndexSet.empty().is_empty()
    assert IndexSet.empty().enumerate(0, 5) == []


def test_complement_of_naturals():
    assert ~IndexSet.naturals() == IndexSet.interval(None, -1)


def test_union_of_residue_classes_is_canonical():
    assert EVENS | ODDS == IndexSet.integers()
    assert (EVENS & ODDS).is_empty()
    assert IndexSet.integers() - EVENS == ODDS


def test_threshold_residue_class():
    k = IndexSet.build(7, None, 10, (), (), [5])
    assert k.min_element() == 12
    assert k.enumerate(0, 2) == [12, 19]
    assert 5 not in k
    with_three = IndexSet.build(7, None, 10, [3], (), [5])
    assert 19 in with_three and 3 in with_three
    assert with_three.min_element() == 3


def test_successor_and_predecessor():
    assert EVENS.next_in(3) == 4
    assert EVENS.next_in(4) == 6
    assert EVENS.prev_in(0) == -2
    with pytest.raises(errors.NoSuccessor):
        IndexSet.interval(0, 10).next_in(10)
    with pytest.raises(errors.NoPredecessor):
        IndexSet.naturals().prev_in(0)


def test_extremes():
    assert IndexSet.progression(0, 2, 0, None).min_element() == 0
    assert IndexSet.interval(None, 7).max_element() == 7
    with pytest.raises(errors.UnboundedBelow):
        IndexSet.integers().min_element()
    with pytest.raises(errors.UnboundedAbove):
        IndexSet.naturals().max_element()
    with pytest.raises(errors.Empty):
        IndexSet.empty().min_element()


def test_gap_sizes():
    k = IndexSet.build(3, None, 2, [0, 1], (), [0])
    assert k.enumerate(0, 4) == [0, 1, 3, 6]
    assert k.gap_sizes() == {1, 2, 3}
    assert EVENS.gap_sizes() == {2}
    assert IndexSet.interval(0, 10).gap_pairs(2) == {(0, 1), (1, 1)}
    with pytest.raises(errors.TooFewElements):
        IndexSet.finite([4]).gap_sizes()


def test_size_and_finiteness():
    assert IndexSet.finite([3, 1, 2]).size() == 3
    assert IndexSet.naturals().size() is None
    assert not IndexSet.naturals().is_finite()


def test_residues_need_a_threshold():
    with pytest.raises(errors.ValidationError):
        IndexSet.build(2, None, None, (), (), [1])


def test_affine_maps():
    assert IndexSet.naturals().affine_image(2, 1) == (
        ODDS & IndexSet.naturals()
    )
    assert EVENS.affine_preimage(2, 0) == IndexSet.integers()
    assert EVENS.affine_preimage(1, 1) == ODDS
    assert IndexSet.interval(0, 3).shift(2) == IndexSet.interval(2, 5)
    assert IndexSet.naturals().negate() == IndexSet.interval(None, 0)


def test_json_and_describe():
    k = IndexSet.build(7, None, 10, [3], (), [5])
    assert IndexSet.from_json(k.to_json()) == k
    assert IndexSet.empty().describe() == "∅"
    assert "mod 7" in k.describe()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("nat", IndexSet.naturals()),
        ("int", IndexSet.integers()),
        ("empty", IndexSet.empty()),
        ("range(0, 4)", IndexSet.interval(0, 4)),
        ("from(3)", IndexSet.interval(3, None)),
        ("upto(-1)", IndexSet.interval(None, -1)),
        ("prog(1, 3)", IndexSet.progression(1, 3)),
        ("prog(0, 2, from(4))", IndexSet.progression(0, 2, 4, None)),
        ("{5, 1, 3}", IndexSet.finite([1, 3, 5])),
        ("join({0}, from(2))", IndexSet.naturals() - IndexSet.finite([1])),
    ],
)
def test_indices_syntax(text, expected):
    assert converters.indices(text) == expected


def test_indices_syntax_rejects_garbage():
    with pytest.raises(errors.ConversionError):
        converters.indices("naturals")


@pytest.mark.property_based
@given(index_set_args())
@settings(max_examples=300)
def test_build_matches_its_rule(args):
    k = IndexSet.build(*args)
    for x in range(-60, 61):
        assert (x in k) == rule_member(args, x)


@pytest.mark.property_based
@given(index_sets, index_sets)
@settings(max_examples=200)
def test_boolean_ops_are_pointwise(a, b):
    for x in range(-60, 61):
        assert ((a | b).member(x)) == (x in a or x in b)
        assert ((a & b).member(x)) == (x in a and x in b)
        assert ((a - b).member(x)) == (x in a and x not in b)
        assert ((~a).member(x)) == (x not in a)


@pytest.mark.property_based
@given(index_sets, st.integers(-30, 30))
@settings(max_examples=300)
def test_next_in_agrees_with_a_scan(k, start):
    members = [x for x in brute_members(k, start + 1, start + 80)]
    try:
        found = k.next_in(start)
    except errors.NoSuccessor:
        assert not members
        assert k.bounded_above()
        return
    if members:
        assert found == members[0]
    else:
        assert found > start + 80


@pytest.mark.property_based
@given(index_sets, st.integers(-30, 30))
@settings(max_examples=200)
def test_prev_in_inverts_next_in(k, start):
    try:
        nxt = k.next_in(start)
    except errors.NoSuccessor:
        return
    assert k.prev_in(nxt + 1) == nxt


@pytest.mark.property_based
@given(index_sets)
@settings(max_examples=200)
def test_gap_sizes_match_consecutive_members(k):
    members = brute_members(k, -200, 200)
    try:
        gaps = k.gap_sizes()
    except errors.TooFewElements:
        assert len(members) < 2
        return
    assert {b - a for a, b in zip(members, members[1:])} <= gaps


@pytest.mark.property_based
@given(index_sets, st.integers(1, 4), st.integers(-5, 5))
@settings(max_examples=200)
def test_affine_image_and_preimage(k, a, c):
    image = k.affine_image(a, c)
    for n in range(-30, 31):
        assert (a * n + c in image) == (n in k)
    assert image.affine_preimage(a, c) == k


@pytest.mark.property_based
@given(index_sets)
@settings(max_examples=200)
def test_indices_text_reads_back(k):
    assert converters.indices(converters.indices_text(k)) == k
