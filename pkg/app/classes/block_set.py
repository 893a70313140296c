"""Discrete sets as finite unions of separated blocks.

A block lists the elements base + ⌊k/m⌋·Σ + prefix(k mod m) for k in an
IndexSet K, where the pattern has m strictly positive letters summing to
Σ. A BlockSet keeps its blocks sorted and separated: every element of a
block lies below every element of the next one.
"""
import logging
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import attr

from .. import errors
from ..utils import gcd_all, primitive_root, rotate
from .index_set import IndexSet
from .lexgroup import GroupElement, below_all_multiples, floor_div, unit

log = logging.getLogger("OAG#Blocks")


@attr.s(frozen=True, slots=True)
class Bound:
    """An end of a block: an exact element, or a ray anchor ± ω·step."""

    value: GroupElement = attr.ib()
    step: Optional[GroupElement] = attr.ib(default=None)
    direction: int = attr.ib(default=0)

    @property
    def exact(self) -> bool:
        return self.step is None


def strictly_below(upper: Bound, lower: Bound) -> bool:
    """Whether everything up to `upper` lies below everything from `lower`."""
    if upper.exact and lower.exact:
        return upper.value < lower.value
    if lower.exact:
        return below_all_multiples(lower.value - upper.value, upper.step)
    if upper.exact:
        return below_all_multiples(lower.value - upper.value, lower.step)
    gap = lower.value - upper.value
    return below_all_multiples(gap, upper.step) and below_all_multiples(
        gap, lower.step
    )


def _pattern(values: Sequence[GroupElement]) -> Tuple[GroupElement, ...]:
    return tuple(values)


@attr.s(frozen=True, slots=True, repr=False)
class Block:
    base: GroupElement = attr.ib()
    pattern: Tuple[GroupElement, ...] = attr.ib(converter=_pattern)
    indices: IndexSet = attr.ib()
    _prefixes: Tuple[GroupElement, ...] = attr.ib(
        init=False, repr=False, eq=False
    )

    @pattern.validator
    def _check_pattern(self, attribute, value):
        if not value:
            raise errors.EmptyPattern("A block needs a nonempty pattern.")
        for letter in value:
            if letter.rank != self.base.rank:
                raise errors.RankMismatch(
                    f"Pattern letter {letter} does not have the rank of "
                    f"the base {self.base}."
                )
            if letter.sign() <= 0:
                raise errors.ValidationError(
                    f"Pattern letters must be positive, got {letter}."
                )

    def __attrs_post_init__(self):
        running = [self.base - self.base]
        for letter in self.pattern:
            running.append(running[-1] + letter)
        object.__setattr__(self, "_prefixes", tuple(running))

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def length(self) -> int:
        return len(self.pattern)

    @property
    def total(self) -> GroupElement:
        return self._prefixes[-1]

    def prefix(self, r: int) -> GroupElement:
        return self._prefixes[r]

    def element(self, k: int) -> GroupElement:
        q, r = divmod(k, self.length)
        return self.base + self.total * q + self.prefix(r)

    def segment(self, k: int, gap: int) -> GroupElement:
        """element(k + gap) − element(k)."""
        q, r = divmod(gap, self.length)
        result = self.total * q
        for j in range(r):
            result = result + self.pattern[(k + j) % self.length]
        return result

    def index_of(self, x: GroupElement) -> Optional[int]:
        """The k in K with element(k) = x, if any."""
        m, total = self.length, self.total
        for r in range(m):
            offset = x - self.base - self.prefix(r)
            q = floor_div(offset, total)
            if q is None or offset != total * q:
                continue
            k = q * m + r
            return k if k in self.indices else None
        return None

    def __contains__(self, x: GroupElement) -> bool:
        return self.index_of(x) is not None

    def is_empty(self) -> bool:
        return self.indices.is_empty()

    def any_index(self) -> int:
        if self.indices.bounded_below():
            return self.indices.min_element()
        if self.indices.bounded_above():
            return self.indices.max_element()
        return self.indices.next_in(-1)

    def lower_bound(self) -> Bound:
        if self.indices.bounded_below():
            return Bound(self.element(self.indices.min_element()))
        return Bound(self.base, self.total, -1)

    def upper_bound(self) -> Bound:
        if self.indices.bounded_above():
            return Bound(self.element(self.indices.max_element()))
        return Bound(self.base, self.total, 1)

    def first_index_at_least(self, x: GroupElement) -> Optional[int]:
        """Least k in K with element(k) ≥ x; None when every element is < x."""
        q = floor_div(x - self.base, self.total)
        if q is None:
            if x > self.base:
                return None
            if not self.indices.bounded_below():
                raise errors.UnboundedBelow(
                    f"The block has no least element at or above {x}."
                )
            return self.indices.min_element()
        k = q * self.length
        while self.element(k) < x:
            k += 1
        if k in self.indices:
            return k
        try:
            return self.indices.next_in(k)
        except errors.NoSuccessor:
            return None

    def iter_from(self, k: int) -> Iterator[GroupElement]:
        while True:
            yield self.element(k)
            try:
                k = self.indices.next_in(k)
            except errors.NoSuccessor:
                return

    # Reshaping without changing the set
    def rebased(self, k: int) -> "Block":
        """Same set with index k moved to 0."""
        return Block(
            self.element(k),
            rotate(self.pattern, k % self.length),
            self.indices.shift(-k),
        )

    def with_indices(self, indices: IndexSet) -> "Block":
        return Block(self.base, self.pattern, indices)

    def normalized(self) -> "Block":
        block = Block(self.base, primitive_root(self.pattern), self.indices)
        k = block.indices
        if k.is_empty():
            return block
        if not (k.is_finite() and k.size() == 1):
            d = gcd_all(k.gap_sizes())
            if d > 1:
                r = block.any_index() % d
                m = block.length
                steps = m // gcd(m, d)
                letters = [
                    block.element(r + d * (j + 1)) - block.element(r + d * j)
                    for j in range(steps)
                ]
                block = Block(
                    block.element(r),
                    primitive_root(letters),
                    k.affine_preimage(d, r),
                )
        if block.indices.bounded_below():
            block = block.rebased(block.indices.min_element())
        elif block.indices.bounded_above():
            block = block.rebased(block.indices.max_element())
        return block

    # Images
    def translate(self, c: GroupElement) -> "Block":
        return Block(self.base + c, self.pattern, self.indices)

    def scale(self, q) -> "Block":
        return Block(
            self.base * q, [x * q for x in self.pattern], self.indices
        )

    def reflect(self) -> "Block":
        return Block(
            -self.base, tuple(reversed(self.pattern)), self.indices.negate()
        )

    def __repr__(self) -> str:
        letters = ", ".join(str(x) for x in self.pattern)
        return (
            f"Block(base={self.base}, pattern=[{letters}], "
            f"K={self.indices.describe()})"
        )


@attr.s(frozen=True, slots=True)
class BlockSet:
    rank: int = attr.ib()
    blocks: Tuple[Block, ...] = attr.ib(converter=tuple)
    nonneg: bool = attr.ib(default=False)

    @classmethod
    def empty(cls, rank: int) -> "BlockSet":
        return cls(rank, ())

    @classmethod
    def from_points(
        cls, points: Sequence[GroupElement], rank: Optional[int] = None
    ) -> "BlockSet":
        points = sorted(set(points))
        if not points:
            if rank is None:
                raise errors.ValidationError(
                    "An empty point set needs an explicit rank."
                )
            return cls.empty(rank)
        rank = points[0].rank
        letters = [b - a for a, b in zip(points, points[1:])]
        closing = (
            points[-1] - points[0] if letters else unit(rank, rank - 1)
        )
        block = Block(
            points[0],
            letters + [closing],
            IndexSet.interval(0, len(points) - 1),
        )
        return cls(rank, (block,))

    def is_empty(self) -> bool:
        return not self.blocks

    def is_finite(self) -> bool:
        return all(b.indices.is_finite() for b in self.blocks)

    def points(self) -> List[GroupElement]:
        if not self.is_finite():
            raise errors.ValidationError(
                "Only a finite set can be listed in full."
            )
        return [
            b.element(k) for b in self.blocks for k in b.indices.middle
        ]

    def size(self) -> Optional[int]:
        if not self.is_finite():
            return None
        return sum(b.indices.size() for b in self.blocks)

    def member(self, x: GroupElement) -> bool:
        if x.rank != self.rank:
            raise errors.RankMismatch(
                f"{x} has rank {x.rank} but the set has rank {self.rank}."
            )
        return any(x in b for b in self.blocks)

    def __contains__(self, x: GroupElement) -> bool:
        return self.member(x)

    def locate(self, x: GroupElement) -> Optional[Tuple[int, int]]:
        """(block position, index) of x, or None."""
        for i, block in enumerate(self.blocks):
            k = block.index_of(x)
            if k is not None:
                return i, k
        return None

    def min_element(self) -> GroupElement:
        if not self.blocks:
            raise errors.Empty("The set is empty.")
        first = self.blocks[0]
        return first.element(first.indices.min_element())

    def max_element(self) -> GroupElement:
        if not self.blocks:
            raise errors.Empty("The set is empty.")
        last = self.blocks[-1]
        return last.element(last.indices.max_element())

    def count_below(self, x: GroupElement) -> Optional[int]:
        """How many elements are < x; None when there are infinitely many."""
        total = 0
        for block in self.blocks:
            k = block.indices
            try:
                first = block.first_index_at_least(x)
            except errors.UnboundedBelow:
                continue
            if first is None:
                if not k.is_finite():
                    return None
                total += k.size()
                continue
            if not k.bounded_below():
                return None
            total += len(k.elements_between(k.min_element(), first - 1))
        return total

    def iter_from(self, start: GroupElement) -> Iterator[GroupElement]:
        for block in self.blocks:
            k = block.first_index_at_least(start)
            if k is None:
                continue
            yield from block.iter_from(k)

    def enumerate_window(
        self, start: GroupElement, count: int
    ) -> List[GroupElement]:
        result: List[GroupElement] = []
        if count <= 0:
            return result
        for x in self.iter_from(start):
            result.append(x)
            if len(result) >= count:
                break
        return result

    def first_elements(self, count: int) -> List[GroupElement]:
        """The first count elements, starting at the least one."""
        if not self.blocks:
            return []
        return self.enumerate_window(self.min_element(), count)

    def translate(self, c: GroupElement) -> "BlockSet":
        return validate([b.translate(c) for b in self.blocks], self.rank)

    def scale(self, q) -> "BlockSet":
        if q <= 0:
            raise errors.NotPositive(f"Scale factors must be positive: {q}")
        return validate([b.scale(q) for b in self.blocks], self.rank)

    def reflect(self) -> "BlockSet":
        return validate([b.reflect() for b in self.blocks], self.rank)


def _representative(block: Block) -> GroupElement:
    return block.element(block.any_index())


def validate(
    blocks: Sequence[Block], rank: int, nonneg: bool = False
) -> BlockSet:
    """Sort, normalize and check the blocks of a discrete set."""
    kept = []
    for block in blocks:
        if block.rank != rank:
            raise errors.RankMismatch(
                f"A block of rank {block.rank} cannot join a rank {rank} set."
            )
        if not block.is_empty():
            kept.append(block.normalized())
    kept.sort(key=lambda b: _representative(b).coords)
    for i, (left, right) in enumerate(zip(kept, kept[1:])):
        if not strictly_below(left.upper_bound(), right.lower_bound()):
            raise errors.OverlapError(
                f"Blocks {i} and {i + 1} interleave: {left!r} reaches "
                f"past the start of {right!r}.",
                (i, i + 1),
            )
    if nonneg and kept:
        lowest = kept[0].lower_bound()
        zero = lowest.value - lowest.value
        if lowest.exact:
            ok = lowest.value >= zero
        else:
            ok = below_all_multiples(lowest.value, lowest.step)
        if not ok:
            raise errors.ValidationError(
                "The set is flagged nonnegative but has negative elements."
            )
    return BlockSet(rank, tuple(kept), nonneg)
