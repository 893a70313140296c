from fractions import Fraction

import attr
import pytest
from helpers import block_set, el

from app import errors
from app.classes.block_set import BlockSet
from app.classes.inp_pattern import DISTANCE, POSITION
from app.cogs.witness import witness_funcs as witness
from app.database import database


@pytest.fixture
def family():
    found, report = witness.build_interlaced(witness.standard_family(2, 1))
    assert report["errors"] == []
    return found


def test_standard_family():
    ds = witness.standard_family(3, 2)
    assert [d.min_element() for d in ds] == [
        el(1, 0, 0),
        el(0, 1, 0),
        el(0, 0, 1),
    ]
    with pytest.raises(errors.ValidationError):
        witness.standard_family(2, 2)
    with pytest.raises(errors.ValidationError):
        witness.standard_family(4, 0)


def test_bounds():
    d = block_set((0, 1), [(0, 1)])
    assert witness.all_below(d, el(1, 0))
    assert not witness.all_below(d, el(0, 100))
    assert witness.all_above(d, el(0, 0))
    assert not witness.all_above(d, el(0, 1))


def test_levels_are_scaled(family):
    assert len(family.levels) == 2
    assert family.levels[0] == family.sets[0]
    assert el(0, 1) in family.sets[1]
    assert el(0, Fraction(1, 2)) in family.levels[1]
    assert el(0, Fraction(1, 3)) not in family.levels[1]


def test_interlacing_hypotheses():
    d1 = witness.standard_family(2, 1)[0]
    with pytest.raises(errors.HypothesisFailed) as info:
        witness.build_interlaced([d1, d1])
    assert info.value.level == 1
    with pytest.raises(errors.HypothesisFailed):
        witness.build_interlaced([BlockSet.from_points([el(0, 1)])])
    with pytest.raises(errors.ValidationError):
        witness.build_interlaced([])


def test_pattern_shape(family):
    p = witness.build_inp_pattern(family, 2, False)
    assert [row.kind for row in p.rows] == [POSITION, DISTANCE]
    assert len(p.paths) == 4
    dense = witness.build_inp_pattern(family, 2, True)
    assert len(dense.rows) == 3 and len(dense.paths) == 8
    wide = witness.build_inp_pattern(family, 6, False, seed=4)
    assert len(wide.paths) == witness.RANDOM_PATHS
    with pytest.raises(errors.ValidationError):
        witness.build_inp_pattern(family, 0, False)


def test_patterns_verify(family):
    for columns, dense in [(1, False), (2, False), (3, True), (6, True)]:
        p = witness.build_inp_pattern(family, columns, dense, seed=1)
        assert witness.verify_instance(p)["errors"] == []


def test_one_level_dense_shape():
    report = witness.witness_report(witness.standard_family(2, 1), 3, True)
    assert report["levels"] == 1
    assert report["rows"] == 3 and report["paths"] == 27
    assert report["verify"]["errors"] == []


@pytest.mark.parametrize("levels", [1, 2, 3])
def test_levels_verify_with_all_paths(levels):
    ds = witness.standard_family(levels + 1, levels)
    report = witness.witness_report(ds, 4, True)
    assert report["levels"] == levels
    assert report["rows"] == levels + 2
    assert report["paths"] == 4 ** (levels + 2)
    assert report["verify"]["errors"] == []


def test_tampered_realizer_is_caught(family):
    p = witness.build_inp_pattern(family, 2, False)
    first = p.paths[0]
    bad = attr.evolve(first, realizer=first.realizer + el(0, 1))
    tampered = attr.evolve(p, paths=(bad,) + p.paths[1:])
    check = witness.verify_instance(tampered)
    assert any("realizer" in e for e in check["errors"])
    with pytest.raises(errors.VerificationFailed):
        witness.verify_report(tampered)


def test_missing_paths_are_caught(family):
    p = witness.build_inp_pattern(family, 2, False)
    short = attr.evolve(p, paths=p.paths[:3])
    assert any("paths" in e for e in witness.verify_instance(short)["errors"])


def test_instance_file_replays(family, tmp_path):
    p = witness.build_inp_pattern(family, 2, True)
    db = database.Database(tmp_path)
    db.save("instance.json", database.instance_to_json(p))
    loaded = db.load_any("instance.json")
    assert witness.verify_report(loaded)["paths"] == 8
