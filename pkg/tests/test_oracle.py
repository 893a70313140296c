import pytest
from helpers import el, galaxy_sets, right_rays, word
from hypothesis import given, settings
from hypothesis import strategies as st

from app import errors
from app.cogs.calculus import calculus_funcs
from app.cogs.oracle import oracle_funcs as oracle


def test_brute_window(pattern12, junction):
    assert oracle.brute_window(pattern12, 4) == list(
        word((0, 0), (0, 1), (0, 3), (0, 4))
    )
    assert oracle.brute_window(junction, 5) == list(
        word((0, 0), (0, 1), (0, 2), (1, 0), (1, 1))
    )


def test_brute_window_stops_after_an_open_block(two_galaxies):
    window = oracle.brute_window(two_galaxies, 50)
    assert len(window) == 50
    assert all(x.coords[0] == 0 for x in window)


def test_diff_exact(pattern12):
    report = oracle.run_oracle("diff", pattern12, 2000)
    assert report["status"] == oracle.EXACT
    assert not report["inconclusive"]
    assert "note" not in report


def test_diff_short_window(pattern12):
    report = oracle.run_oracle("diff", pattern12, 2)
    assert report["status"] == oracle.BOUNDARY
    assert report["missing"] == ["(0, 2)"]
    assert report["note"] == "window inconclusive"


@pytest.mark.parametrize("op", ["successor", "gamma", "member", "decompose"])
def test_ops_on_a_junction(junction, op):
    report = oracle.run_oracle(op, junction, 200, samples=50, seed=7)
    assert report["status"] == oracle.EXACT
    assert report["failures"] == []


def test_psigma(pattern12):
    report = oracle.run_oracle(
        "psigma", pattern12, 300, sigma=word((0, 1), (0, 2))
    )
    assert report["status"] == oracle.EXACT
    with pytest.raises(errors.ValidationError):
        oracle.run_oracle("psigma", pattern12, 300)


def test_bad_requests(pattern12):
    with pytest.raises(errors.ValidationError):
        oracle.run_oracle("sort", pattern12, 100)
    with pytest.raises(errors.ValidationError):
        oracle.run_oracle("diff", pattern12, 1)


def test_mismatch_is_a_verification_failure(pattern12, monkeypatch):
    monkeypatch.setattr(calculus_funcs, "diff_set", lambda d: [el(0, 1)])
    with pytest.raises(errors.VerificationFailed) as info:
        oracle.run_oracle("diff", pattern12, 500)
    assert info.value.report["status"] == oracle.MISMATCH
    assert info.value.report["extra"] == ["(0, 2)"]


def test_parallel_members_agree(pattern12):
    alone = oracle.run_oracle("member", pattern12, 400, samples=100)
    shared = oracle.run_oracle("member", pattern12, 400, samples=100, jobs=2)
    assert alone == shared


@pytest.mark.property_based
@given(galaxy_sets(), st.sampled_from(["diff", "successor", "member"]))
@settings(max_examples=80, deadline=None)
def test_symbolic_ops_match_the_walk(d, op):
    report = oracle.run_oracle(op, d, 400, samples=60)
    assert report["status"] != oracle.MISMATCH
    assert report["failures"] == []


@pytest.mark.property_based
@given(galaxy_sets(), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_psigma_matches_the_walk(d, m):
    window = oracle.brute_window(d, 400)
    steps = [b - a for a, b in zip(window, window[1:])]
    if len(steps) < m:
        return
    report = oracle.run_oracle("psigma", d, 400, sigma=steps[:m])
    assert report["extra"] == []


@pytest.mark.property_based
@given(right_rays())
@settings(max_examples=40, deadline=None)
def test_decompose_matches_the_walk(d):
    report = oracle.run_oracle("decompose", d, 150)
    assert report["failures"] == []
