from fractions import Fraction

import pytest
from helpers import el, elements, positive_elements, rationals
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from app import errors
from app.classes.lexgroup import (
    ArchClass,
    arch_class,
    arch_ll,
    cmp,
    floor_div,
    format_element,
    rational_ratio,
    scalar_mul,
    unit,
    zero,
)


def test_add_and_subtract():
    assert el(Fraction(1, 2), 3) + el(0, -1) == el(Fraction(1, 2), 2)
    assert el(1, 2) - el(1, 2) == zero(2)
    assert -el(1, -2) == el(-1, 2)


def test_lexicographic_order():
    assert cmp(el(0, 1), el(1, -100)) == -1
    assert cmp(el(1, 0), el(0, 1000)) == 1
    assert cmp(el(2, 3), el(2, 3)) == 0
    assert el(0, 0, 1) < el(0, 1, -5)


def test_scalar_mul():
    assert scalar_mul(Fraction(3, 2), el(2, -4)) == el(3, -6)
    assert 2 * el(1, Fraction(1, 3)) == el(2, Fraction(2, 3))


def test_rank_mismatch():
    with pytest.raises(errors.RankMismatch):
        el(1, 2) + el(1, 2, 3)


def test_arch_class():
    assert arch_class(el(0, 3)) == arch_class(el(0, Fraction(7, 2)))
    assert arch_class(el(1, -50)) > arch_class(el(0, 1))
    assert arch_class(unit(3, 2)) == ArchClass(2)
    with pytest.raises(errors.NotPositive):
        arch_class(el(0, -1))
    with pytest.raises(errors.NotPositive):
        arch_class(zero(2))


def test_arch_ll():
    assert arch_ll(el(0, 5), el(1, 0))
    assert not arch_ll(el(1, 0), el(0, 5))
    assert not arch_ll(el(0, 1), el(0, 9))


def test_rational_ratio():
    assert rational_ratio(el(0, 2), el(0, 3)) == Fraction(3, 2)
    assert rational_ratio(el(2, -4), el(-1, 2)) == Fraction(-1, 2)
    with pytest.raises(errors.NotRationallyDependent):
        rational_ratio(el(1, 0), el(0, 1))
    with pytest.raises(errors.NotRationallyDependent):
        rational_ratio(zero(2), el(0, 1))


def test_floor_div():
    assert floor_div(el(0, 7), el(0, 2)) == 3
    assert floor_div(el(0, -7), el(0, 2)) == -4
    assert floor_div(el(0, 6), el(0, 2)) == 3
    assert floor_div(el(0, -3), el(1, 0)) == -1
    assert floor_div(el(1, 0), el(0, 1)) is None
    with pytest.raises(errors.NotPositive):
        floor_div(el(0, 1), el(0, -1))


def test_format_element():
    assert format_element(el(Fraction(1, 2), -3)) == "(1/2, -3)"
    assert str(el(0, 1)) == "(0, 1)"


@pytest.mark.property_based
@given(elements(), elements(), elements())
@settings(max_examples=200)
def test_order_is_translation_invariant(x, y, z):
    assume(x < y)
    assert x + z < y + z


@pytest.mark.property_based
@given(elements(), elements())
@settings(max_examples=200)
def test_cmp_is_antisymmetric(x, y):
    assert cmp(x, y) == -cmp(y, x)
    assert (cmp(x, y) == 0) == (x == y)


@pytest.mark.property_based
@given(positive_elements(3), st.integers(1, 100))
@settings(max_examples=100)
def test_multiples_share_a_class(x, n):
    assert arch_class(n * x) == arch_class(x)


@pytest.mark.property_based
@given(positive_elements(), rationals)
@settings(max_examples=200)
def test_rational_ratio_recovers_the_scalar(x, q):
    assume(q != 0)
    assert rational_ratio(x, scalar_mul(q, x)) == q


@pytest.mark.property_based
@given(elements(), positive_elements())
@settings(max_examples=300)
def test_floor_div_brackets_x(x, y):
    q = floor_div(x, y)
    if q is None:
        assert x.leading() < y.leading()
    else:
        assert q * y <= x < (q + 1) * y
