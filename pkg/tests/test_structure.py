from fractions import Fraction

import pytest
from helpers import block_set, el, right_rays, word
from hypothesis import given, settings

from app import errors
from app.classes.block_set import Block, BlockSet, validate
from app.classes.difference_word import DifferenceWord
from app.classes.index_set import IndexSet
from app.cogs.calculus import calculus_funcs as calc
from app.cogs.setrep import setrep_funcs
from app.cogs.structure import structure_funcs as st_funcs

NAT = IndexSet.naturals()


def strs(letters):
    return [str(x) for x in letters]


def ray_word(*letters):
    return DifferenceWord.build(el(0, 0), [], None, word(*letters))


# Words and periods
def test_primitive_generator():
    a, b = el(0, 1), el(0, 2)
    assert st_funcs.primitive_generator([a, b, a, b]) == (a, b)
    assert st_funcs.primitive_generator([a, a, a]) == (a,)
    with pytest.raises(errors.ValidationError):
        st_funcs.primitive_generator([])


def test_factor_count():
    w = ray_word((0, 1), (0, 1), (0, 2))
    assert st_funcs.factor_count(w, 1) == 2
    assert st_funcs.factor_count(w, 2) == 3
    with pytest.raises(errors.ValidationError):
        st_funcs.factor_count(w, 0)


def test_detect_period():
    found = st_funcs.detect_period(ray_word((0, 1), (0, 2)), 2)
    assert found.period == 2 and found.offset == 0 and found.k == 1
    assert found.counts == {1: 2, 2: 2}


def test_detect_period_with_a_prefix():
    w = DifferenceWord.build(el(0, 0), word((0, 5)), None, word((0, 1)))
    found = st_funcs.detect_period(w, 4)
    assert found.period == 1 and found.offset == 1


def test_detect_period_errors():
    with pytest.raises(errors.BoundViolated) as info:
        st_funcs.detect_period(ray_word((0, 1), (0, 2)), 1)
    assert info.value.k == 1
    finite = DifferenceWord.build(el(0, 0), word((0, 1)))
    with pytest.raises(errors.FiniteWord):
        st_funcs.detect_period(finite, 4)


def test_classify_chain(arith):
    line = block_set((0, 0), [(0, 1)], IndexSet.integers())
    left = block_set((0, 0), [(0, 1)], IndexSet.interval(None, 0))
    holed = block_set(
        (0, 0), [(0, 1)], IndexSet.integers() - IndexSet.finite([0])
    )
    small = BlockSet.from_points(list(word((0, 0), (0, 2))))
    kinds = {
        name: st_funcs.classify_chain(calc.chain_partition(d)[0])
        for name, d in [
            ("line", line),
            ("left", left),
            ("holed", holed),
            ("arith", arith),
            ("small", small),
        ]
    }
    assert kinds == {
        "line": "line",
        "left": "left",
        "holed": "two-sided",
        "arith": "right",
        "small": "finite",
    }


def test_eventual_periods(pattern12):
    line = block_set((0, 0), [(0, 1)], IndexSet.integers())
    assert st_funcs.eventual_periods(calc.chain_partition(line)[0]) == (1, 1)
    chain = calc.chain_partition(pattern12)[0]
    assert st_funcs.eventual_periods(chain) == (None, 2)


def test_period_report(pattern12):
    report = st_funcs.period_report(pattern12, 8)
    assert report["bound"] == 8
    (entry,) = report["chains"]
    assert entry["kind"] == "right"
    assert entry["right"]["period"] == 2
    assert entry["right"]["counts"] == {"1": 2, "2": 2}
    assert "left" not in entry


def test_sigma_witnesses(pattern12):
    chain = calc.chain_partition(pattern12)[0]
    for sigma in (word((0, 1), (0, 2)), word((0, 2), (0, 1))):
        left, right = st_funcs.sigma_witnesses(chain, sigma)
        assert left is None and right in pattern12
        assert calc.successor(pattern12, right) - right == sigma[0]
        assert st_funcs.sigma_kinds(chain, sigma) == ["eventual-right"]
    assert st_funcs.sigma_witnesses(chain, word((0, 1))) == (None, None)
    assert st_funcs.sigma_kinds(chain, word((0, 1))) == []


def test_sigma_chains():
    line = block_set((0, 0), [(0, 1)], IndexSet.integers())
    chain = calc.chain_partition(line)[0]
    assert st_funcs.is_sigma_chain(chain, word((0, 1), (0, 1)))
    assert st_funcs.sigma_kinds(chain, word((0, 1))) == [
        "sigma-chain",
        "eventual-right",
        "eventual-left",
    ]
    holed = block_set(
        (0, 0), [(0, 1)], IndexSet.integers() - IndexSet.finite([0])
    )
    chain = calc.chain_partition(holed)[0]
    assert not st_funcs.is_sigma_chain(chain, word((0, 1)))
    assert st_funcs.sigma_witnesses(chain, word((0, 1))) == (
        el(0, -1),
        el(0, 1),
    )


# Uniformity
def test_uniformize(pattern12, junction):
    ((members, n),) = st_funcs.uniformize(pattern12)
    assert members == pattern12 and n == 2
    pieces = st_funcs.uniformize(junction)
    assert [m.size() for m, _ in pieces] == [3, None]
    assert pieces[1][1] == 1


def test_is_uniformized(arith, junction):
    assert st_funcs.is_uniformized(arith) == 1
    assert st_funcs.is_uniformized(BlockSet.from_points([el(0, 1)])) == 1
    assert st_funcs.is_uniformized(junction) is None


def test_delta_components(pattern12, arith, junction):
    assert st_funcs.delta_components(pattern12, el(0, 1)) == [1]
    assert st_funcs.delta_components(arith, el(0, 1)) == [None]
    assert st_funcs.delta_components(junction, el(0, 1)) == [2, None]


def test_is_pseudo_arithmetic(arith, pattern12):
    assert st_funcs.is_pseudo_arithmetic(arith) == el(0, 1)
    assert st_funcs.is_pseudo_arithmetic(pattern12) is None
    single = BlockSet.from_points([el(0, 1)])
    assert st_funcs.is_pseudo_arithmetic(single) is None


def test_restrict(arith):
    chain = calc.chain_partition(arith)[0]
    part = st_funcs.restrict(arith, chain, el(0, 2), el(0, 4))
    assert part.points() == list(word((0, 2), (0, 3), (0, 4)))


# Archimedean partition
def test_arch_partition(junction, two_galaxies):
    parts = st_funcs.arch_partition(junction)
    assert [p.size() for p in parts] == [1, 1, 1, None]
    assert parts[-1] == BlockSet(2, two_galaxies.blocks[1:])
    report = st_funcs.archsplit_report(junction)
    assert [p["classes"] for p in report["pieces"]] == [[], [], [], [1]]
    assert st_funcs.arch_partition(BlockSet.empty(2)) == []


# P_σ and σ-intervals
def test_p_sigma(pattern12):
    even = st_funcs.p_sigma(pattern12, word((0, 1), (0, 2)))
    assert el(0, 0) in even and el(0, 3) in even
    assert el(0, 1) not in even
    odd = st_funcs.p_sigma(pattern12, word((0, 2), (0, 1)))
    assert el(0, 1) in odd and el(0, 4) in odd and el(0, 0) not in odd
    with pytest.raises(errors.AlphabetMismatch):
        st_funcs.p_sigma(pattern12, word((0, 5)))
    with pytest.raises(errors.ValidationError):
        st_funcs.p_sigma(pattern12, ())


def test_psigma_report(pattern12):
    report = st_funcs.psigma_report(pattern12, word((0, 1), (0, 2)))
    assert report["sigma"] == "[(0, 1), (0, 2)]"
    assert report["generator"] == "[(0, 1), (0, 2)]"
    assert report["window"][:2] == ["(0, 0)", "(0, 3)"]
    (entry,) = report["chains"]
    assert entry["kinds"] == ["eventual-right"] and entry["left"] is None


def test_sigma_interval_cover(two_galaxies, junction):
    intervals, leftover = st_funcs.sigma_interval_cover(two_galaxies)
    assert leftover == []
    assert [(i.left_kind, i.right_kind) for i in intervals] == [
        ("element", "cut"),
        ("element", "+inf"),
    ]
    assert [i.mu for i in intervals] == [1, 1]
    with pytest.raises(errors.NotUniformized):
        st_funcs.sigma_interval_cover(junction)


# Decomposition
def test_decompose_pattern(pattern12):
    report = st_funcs.decompose_report(pattern12)
    shown = [(p["eta"], p["interval"], p["phase"]) for p in report["pieces"]]
    assert shown == [("(0, 3)", 0, 0), ("(0, 3)", 0, 1)]
    assert report["pieces"][0]["window"][:2] == ["(0, 0)", "(0, 3)"]
    assert report["pieces"][1]["window"][:2] == ["(0, 1)", "(0, 4)"]
    assert report["points"] == []
    certificates = report["certificates"]
    assert certificates["N"] == 2
    assert certificates["mu"] == [2]
    assert certificates["generators"] == ["[(0, 1), (0, 2)]"]


def test_decompose_junction(junction):
    decomposition = st_funcs.pseudo_arith_decomp(junction)
    assert strs(decomposition.points) == ["(0, 0)", "(0, 1)", "(0, 2)"]
    (piece,) = decomposition.pieces
    assert piece.eta == el(0, 1)
    assert el(1, 7) in piece.members


def test_decompose_two_galaxies(two_galaxies):
    decomposition = st_funcs.pseudo_arith_decomp(two_galaxies)
    assert [p.interval for p in decomposition.pieces] == [0, 1]
    assert {p.eta for p in decomposition.pieces} == {el(0, 1)}


def test_decompose_empty():
    decomposition = st_funcs.pseudo_arith_decomp(BlockSet.empty(2))
    assert decomposition.pieces == () and decomposition.points == ()


# Initial segments
def test_initial_segment_check(arith):
    threes = block_set((0, 0), [(0, 3)])
    prefix = BlockSet.from_points(list(word((0, 0), (0, 3), (0, 6))))
    check = st_funcs.initial_segment_check
    assert check(threes, threes) == st_funcs.EQUAL
    assert check(threes, prefix) == st_funcs.E1_PREFIX
    assert check(prefix, threes) == st_funcs.E0_PREFIX
    with pytest.raises(errors.DifferentEta):
        check(threes, arith)
    with pytest.raises(errors.DifferentMin):
        check(threes, block_set((0, 3), [(0, 3)]))
    with pytest.raises(errors.NotPseudoArithmetic):
        check(threes, block_set((0, 0), [(0, 1), (0, 2)]))


def test_initial_segment_check_across_galaxies():
    def galaxies(top):
        return validate(
            [
                Block(el(0, 0), [el(0, 3)], NAT),
                Block(el(top, 0), [el(0, 3)], NAT),
            ],
            2,
        )

    with pytest.raises(errors.VerificationFailed):
        st_funcs.initial_segment_check(galaxies(1), galaxies(2))


def far_prefix_set(top):
    """{(0, k) : 0 ≤ k ≤ top}, then the ℤ-chain (1, 0) + (0, ℤ)."""
    return validate(
        [
            Block(el(0, 0), [el(0, 1)], IndexSet.interval(0, top)),
            Block(el(1, 0), [el(0, 1)], IndexSet.integers()),
        ],
        2,
    )


def test_initial_segment_check_is_exact_far_from_the_start():
    check = st_funcs.initial_segment_check
    assert check(far_prefix_set(500), far_prefix_set(500)) == st_funcs.EQUAL
    with pytest.raises(errors.VerificationFailed):
        check(far_prefix_set(500), far_prefix_set(1000))
    short = block_set((0, 0), [(0, 1)], IndexSet.interval(0, 500))
    long = block_set((0, 0), [(0, 1)], IndexSet.interval(0, 1000))
    assert check(short, long) == st_funcs.E0_PREFIX
    assert check(long, short) == st_funcs.E1_PREFIX
    assert check(short, far_prefix_set(500)) == st_funcs.E0_PREFIX


def test_same_progression():
    eta = el(0, 1)
    z_chain = block_set((1, 0), [(0, 1)], IndexSet.integers())
    shifted = block_set((1, Fraction(1, 2)), [(0, 1)], IndexSet.integers())
    moved = block_set((1, 7), [(0, 1)], IndexSet.integers())
    assert st_funcs.same_progression(z_chain, moved, eta)
    assert not st_funcs.same_progression(z_chain, shifted, eta)
    ray = block_set((0, 0), [(0, 1)])
    assert not st_funcs.same_progression(ray, z_chain, eta)
    assert st_funcs.same_progression(BlockSet.empty(2), BlockSet.empty(2), eta)


@pytest.mark.property_based
@given(right_rays())
@settings(max_examples=60, deadline=None)
def test_decomposition_partitions_the_set(d):
    decomposition = st_funcs.pseudo_arith_decomp(d)
    pieces = [p.members for p in decomposition.pieces]
    points = set(decomposition.points)
    for x in d.first_elements(60):
        owners = sum(1 for p in pieces if x in p) + (x in points)
        assert owners == 1
    for piece in decomposition.pieces:
        assert st_funcs.is_pseudo_arithmetic(piece.members) == piece.eta
        assert all(x in d for x in setrep_funcs.sample(piece.members, 10))


@pytest.mark.property_based
@given(right_rays())
@settings(max_examples=60, deadline=None)
def test_uniformized_pieces_cover_the_set(d):
    pieces = st_funcs.uniformize(d)
    for x in d.first_elements(40):
        assert sum(1 for members, _ in pieces if x in members) == 1
