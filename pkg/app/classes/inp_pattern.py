from typing import Optional, Tuple

import attr

from .block_set import BlockSet
from .lexgroup import GroupElement

# Row kinds: x itself lies in the interval, or the distance from x down
# to the sum of the first `level`+1 digit levels does.
POSITION, DISTANCE = "x", "dist"


@attr.s(frozen=True, slots=True)
class InterlacedFamily:
    """D_1, …, D_n with 0 < D_(i+1) < D_i′.

    E_1 = D_1 and E_(i+1) = {x + y : x ∈ E_i non-maximal, 2^i·y ∈ D_(i+1)}.
    Between two successive elements a < S(a) of E_i the next level is
    a + 2^-i·D_(i+1), so `levels` holds those digit sets.
    """

    sets: Tuple[BlockSet, ...] = attr.ib(converter=tuple)
    levels: Tuple[BlockSet, ...] = attr.ib(converter=tuple)


@attr.s(frozen=True, slots=True)
class Row:
    kind: str = attr.ib(validator=attr.validators.in_((POSITION, DISTANCE)))
    level: Optional[int] = attr.ib()
    # Half-open [lo, hi) per column; pairwise disjoint means 2-inconsistent.
    intervals: Tuple[Tuple[GroupElement, GroupElement], ...] = attr.ib(
        converter=tuple
    )
    k: int = attr.ib(default=2)


@attr.s(frozen=True, slots=True)
class Path:
    columns: Tuple[int, ...] = attr.ib(converter=tuple)
    digits: Tuple[GroupElement, ...] = attr.ib(converter=tuple)
    extra: GroupElement = attr.ib()
    realizer: GroupElement = attr.ib()


@attr.s(frozen=True, slots=True)
class InpPatternInstance:
    levels: Tuple[BlockSet, ...] = attr.ib(converter=tuple)
    rows: Tuple[Row, ...] = attr.ib(converter=tuple)
    paths: Tuple[Path, ...] = attr.ib(converter=tuple)
    columns: int = attr.ib(default=0)
    dense: bool = attr.ib(default=False)
