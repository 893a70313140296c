from fractions import Fraction

import pytest
from helpers import block_set, el, right_rays, word
from hypothesis import given, settings

from app import converters, errors
from app.classes import formula as fm
from app.classes.block_set import Block, BlockSet, validate
from app.classes.group import IntegerLikeGroup
from app.classes.index_set import IndexSet
from app.cogs.groups import groups_funcs as groups
from app.cogs.structure import structure_funcs

Q = Fraction
QZ = groups.unit_group(2)


# Integer-like groups
def test_floor_examples():
    assert groups.floor_g(QZ, el(Q(1, 2), Q(7, 3))) == el(Q(1, 2), 2)
    assert groups.floor_g(QZ, el(Q(1, 2), Q(-7, 3))) == el(Q(1, 2), -3)
    assert groups.floor_g(QZ, el(0, 4)) == el(0, 4)
    g3 = IntegerLikeGroup(3, 1, 1)
    assert groups.floor_g(g3, el(Q(1, 2), 2, -1)) == el(Q(1, 2), 1, 0)
    assert groups.frac_g(g3, el(Q(1, 2), 2, -1)) == el(0, 1, -1)


def test_group_membership_and_description():
    g = IntegerLikeGroup(2, 1, 3)
    assert el(Q(5, 7), 6) in g and el(0, 4) not in g
    assert g.eta == el(0, 3)
    assert g.describe() == "Q×(3)Z"
    assert QZ.describe() == "Q×Z"
    assert IntegerLikeGroup(3, 1, 1).describe() == "Q×Z×0"
    assert IntegerLikeGroup.from_json(g.to_json()) == g


def test_invalid_groups():
    with pytest.raises(errors.InvalidGroup):
        IntegerLikeGroup(2, 2, 1)
    with pytest.raises(errors.InvalidGroup):
        IntegerLikeGroup(2, 1, 0)
    with pytest.raises(errors.ConversionError):
        IntegerLikeGroup.from_json({"rank": 2})


def test_integer_like_check():
    for g in (QZ, IntegerLikeGroup(2, 1, Q(3, 2)), IntegerLikeGroup(3, 0, 2)):
        assert groups.integer_like_check(g, 100, seed=3)["errors"] == []


# Building groups from pieces
def test_normalize():
    moved = groups.normalize(block_set((0, 5), [(0, 2)]))
    assert moved.min_element() == el(0, 0)
    left = block_set((0, 5), [(0, 2)], IndexSet.interval(None, 0))
    assert groups.normalize(left) == block_set((0, 0), [(0, 2)])


def test_build_group(arith, pattern12):
    assert groups.build_group([arith]) == QZ
    decomposition = structure_funcs.pseudo_arith_decomp(pattern12)
    pieces = [p.members for p in decomposition.pieces]
    assert groups.build_group(pieces) == IntegerLikeGroup(2, 1, 3)
    assert groups.build_group([block_set((0, 0), [(0, Q(1, 2))]), arith]) == (
        IntegerLikeGroup(2, 1, Q(1, 2))
    )


def test_build_group_errors(arith, pattern12):
    with pytest.raises(errors.ValidationError):
        groups.build_group([])
    with pytest.raises(errors.IncompatibleEtas):
        groups.build_group([arith, block_set((0, 0), [(1, 0)])])
    with pytest.raises(errors.NotPseudoArithmetic):
        groups.build_group([pattern12])
    shifted = validate(
        [
            Block(el(0, 0), [el(0, 1)], IndexSet.naturals()),
            Block(el(1, Q(1, 2)), [el(0, 1)], IndexSet.naturals()),
        ],
        2,
    )
    with pytest.raises(errors.NotNormalized):
        groups.build_group([shifted])


def test_contains_set(arith):
    assert groups.contains_set(QZ, arith)
    assert not groups.contains_set(QZ, block_set((0, 0), [(0, Q(1, 2))]))


def test_groupish_check():
    threes = block_set((0, 0), [(0, 3)])
    assert groups.groupish_check(threes, 50)["errors"] == []
    with pytest.raises(errors.DifferentMin):
        groups.groupish_check(block_set((0, 1), [(0, 3)]), 10)


def test_split_at(arith):
    lower, upper = groups.split_at(arith, el(0, 3))
    assert lower.points() == list(word((0, 0), (0, 1), (0, 2)))
    assert upper.min_element() == el(0, 3)


# Formulas
def test_formula_for_a_ray(arith):
    phi, g = groups.emit_formula(arith)
    assert g == QZ
    holds = {
        x: groups.eval_formula(phi, el(*x), g)
        for x in [(0, 0), (0, 5), (0, -1), (0, Q(1, 2)), (1, 0), (-1, 3)]
    }
    assert holds == {
        (0, 0): True,
        (0, 5): True,
        (0, -1): False,
        (0, Q(1, 2)): False,
        (1, 0): False,
        (-1, 3): False,
    }


def test_formula_text_reads_back(pattern12, junction):
    for d in (pattern12, junction):
        phi, _ = groups.emit_formula(d)
        assert converters.formula(phi.sexpr()) == phi


def test_formula_for_a_finite_set():
    d = BlockSet.from_points(list(word((0, 0), (0, 1), (0, 3))))
    phi, g = groups.emit_formula(d)
    assert g == QZ
    assert isinstance(phi, fm.Or) and len(phi.items) == 3
    assert groups.eval_formula(phi, el(0, 3), g)
    assert not groups.eval_formula(phi, el(0, 2), g)


def test_named_parameters():
    phi = converters.formula("(le (param c) x)", {"c": el(0, 2)})
    assert groups.eval_formula(phi, el(0, 3), QZ)
    assert not groups.eval_formula(phi, el(0, 1), QZ)
    with pytest.raises(errors.ConversionError):
        converters.formula("(le (param c) x)")


def test_galaxy_cuts():
    below = converters.formula("(lt x (sup 1 (param 0 0)))")
    assert groups.eval_formula(below, el(0, 10 ** 6), QZ)
    assert not groups.eval_formula(below, el(1, -(10 ** 6)), QZ)
    floor_of_cut = converters.formula("(in-G (floor (sup 1 (param 0 0))))")
    with pytest.raises(errors.ValidationError):
        groups.eval_formula(floor_of_cut, el(0, 0), QZ)


def test_defing_report(pattern12):
    report = groups.defing_report(pattern12, 50, seed=1)
    assert report["describe"] == "Q×(3)Z"
    assert report["check"]["errors"] == []
    assert report["arith"]["star"] == 0
    assert [p["relation"] for p in report["arith"]["pieces"]] == [
        structure_funcs.EQUAL,
        structure_funcs.EQUAL,
    ]


def test_def_arith_without_pieces():
    d = BlockSet.from_points(list(word((0, 0), (0, 1))))
    assert groups.def_arith(d) == {"group": None, "star": None, "pieces": []}


@pytest.mark.property_based
@given(right_rays())
@settings(max_examples=40, deadline=None)
def test_formula_agrees_with_membership(d):
    phi, g = groups.emit_formula(d)
    assert groups.formula_check(phi, g, d, 40, seed=2)["errors"] == []
