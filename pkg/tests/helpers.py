"""Builders and hypothesis strategies shared by the tests."""
from fractions import Fraction

from hypothesis import strategies as st

from app.classes.block_set import Block, BlockSet, validate
from app.classes.index_set import IndexSet
from app.classes.lexgroup import GroupElement

NAT = IndexSet.naturals()


def el(*coords) -> GroupElement:
    return GroupElement(coords)


def word(*letters):
    return tuple(el(*x) for x in letters)


def block_set(base, pattern, indices=NAT, rank=2) -> BlockSet:
    return validate([Block(el(*base), word(*pattern), indices)], rank)


def brute_members(k: IndexSet, lo: int = -60, hi: int = 60):
    return [x for x in range(lo, hi + 1) if x in k]


# Strategies
rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 8))
positive_rationals = st.builds(
    Fraction, st.integers(1, 12), st.integers(1, 4)
)


def elements(rank: int = 2):
    return st.lists(rationals, min_size=rank, max_size=rank).map(
        GroupElement
    )


@st.composite
def positive_elements(draw, rank: int = 2):
    lead = draw(st.integers(0, rank - 1))
    tail = draw(
        st.lists(rationals, min_size=rank - lead - 1, max_size=rank - lead - 1)
    )
    return GroupElement([0] * lead + [draw(positive_rationals)] + tail)


@st.composite
def index_set_args(draw):
    """Loose arguments for IndexSet.build."""
    period = draw(st.integers(1, 6))
    lo = draw(st.none() | st.integers(-20, 5))
    hi = draw(st.none() | st.integers(-5, 20))
    middle = draw(st.lists(st.integers(-25, 25), max_size=8))
    residues = st.lists(st.integers(0, period - 1), max_size=period)
    lo_res = draw(residues) if lo is not None else []
    hi_res = draw(residues) if hi is not None else []
    return period, lo, hi, middle, lo_res, hi_res


def rule_member(args, x: int) -> bool:
    period, lo, hi, middle, lo_res, hi_res = args
    if x in middle:
        return True
    if hi is not None and x > hi and x % period in hi_res:
        return True
    return lo is not None and x < lo and x % period in lo_res


index_sets = index_set_args().map(lambda a: IndexSet.build(*a))

class_one_letters = positive_rationals.map(lambda q: el(0, q))


@st.composite
def galaxy_sets(draw):
    """Rank 2 sets of one to three galaxies along the first coordinate.

    Only the first block may be unbounded below and only the last one
    unbounded above, so every finite window closes.
    """
    count = draw(st.integers(1, 3))
    blocks = []
    for i in range(count):
        pattern = draw(st.lists(class_one_letters, min_size=1, max_size=3))
        lo = None if i == 0 and draw(st.booleans()) else draw(
            st.integers(-3, 0)
        )
        hi = None if i == count - 1 and draw(st.booleans()) else draw(
            st.integers(0, 4)
        )
        base = el(i, draw(st.integers(-5, 5)))
        blocks.append(Block(base, pattern, IndexSet.interval(lo, hi)))
    return validate(blocks, 2)


@st.composite
def right_rays(draw):
    """One galaxy, bounded below and unbounded above, or finite."""
    pattern = draw(st.lists(class_one_letters, min_size=1, max_size=3))
    start = draw(st.integers(-3, 3))
    end = draw(st.none() | st.integers(start + 1, start + 12))
    base = el(0, draw(st.integers(-5, 5)))
    return validate([Block(base, pattern, IndexSet.interval(start, end))], 2)
