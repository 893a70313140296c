"""Exact arithmetic in the rank-r lexicographically ordered group Q^r.

Coordinate 0 is the most significant one. An element is positive when
its first nonzero coordinate is positive, and its Archimedean class is
the index of that coordinate (a smaller index is a larger class).
"""
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import attr

from .. import errors
from ..utils import fmt_fraction


def _coords(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@attr.s(frozen=True, slots=True, repr=False, order=False)
class GroupElement:
    coords: Tuple[Fraction, ...] = attr.ib(converter=_coords)

    @coords.validator
    def _check(self, attribute, value):
        if len(value) < 1:
            raise errors.ValidationError(
                "A group element needs at least one coordinate."
            )

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _same_rank(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"Cannot combine a group element with {other!r}")
        if other.rank != self.rank:
            raise errors.RankMismatch(
                f"Cannot combine {self} (rank {self.rank}) with "
                f"{other} (rank {other.rank})."
            )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._same_rank(other)
        return GroupElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._same_rank(other)
        return GroupElement(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "GroupElement":
        return GroupElement(-a for a in self.coords)

    def __mul__(self, q) -> "GroupElement":
        q = Fraction(q)
        return GroupElement(q * a for a in self.coords)

    __rmul__ = __mul__

    def __lt__(self, other: "GroupElement") -> bool:
        self._same_rank(other)
        return self.coords < other.coords

    def __le__(self, other: "GroupElement") -> bool:
        self._same_rank(other)
        return self.coords <= other.coords

    def __gt__(self, other: "GroupElement") -> bool:
        self._same_rank(other)
        return self.coords > other.coords

    def __ge__(self, other: "GroupElement") -> bool:
        self._same_rank(other)
        return self.coords >= other.coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def leading(self) -> Optional[int]:
        for i, c in enumerate(self.coords):
            if c:
                return i
        return None

    def __repr__(self) -> str:
        return format_element(self)

    __str__ = __repr__


@attr.s(frozen=True, slots=True, order=False)
class ArchClass:
    leading: int = attr.ib()

    def __lt__(self, other: "ArchClass") -> bool:
        return self.leading > other.leading

    def __le__(self, other: "ArchClass") -> bool:
        return self.leading >= other.leading

    def __gt__(self, other: "ArchClass") -> bool:
        return self.leading < other.leading

    def __ge__(self, other: "ArchClass") -> bool:
        return self.leading <= other.leading


def zero(rank: int) -> GroupElement:
    return GroupElement([0] * rank)


def unit(rank: int, index: int) -> GroupElement:
    return GroupElement(1 if i == index else 0 for i in range(rank))


def add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def cmp(x: GroupElement, y: GroupElement) -> int:
    if x < y:
        return -1
    if x == y:
        return 0
    return 1


def scalar_mul(q, x: GroupElement) -> GroupElement:
    return x * Fraction(q)


def arch_class(x: GroupElement) -> ArchClass:
    if x.sign() <= 0:
        raise errors.NotPositive(
            f"{x} is not positive, so it has no Archimedean class here."
        )
    return ArchClass(x.leading())


def arch_ll(x: GroupElement, y: GroupElement) -> bool:
    """Whether x is infinitesimal relative to y."""
    return arch_class(x).leading > arch_class(y).leading


def rational_ratio(x: GroupElement, y: GroupElement) -> Fraction:
    """The rational q with y = q·x."""
    x._same_rank(y)
    lead = x.leading()
    if lead is None:
        raise errors.NotRationallyDependent(
            "Cannot divide by the zero element."
        )
    q = y.coords[lead] / x.coords[lead]
    if x * q != y:
        raise errors.NotRationallyDependent(
            f"{y} is not a rational multiple of {x}."
        )
    return q


def floor_div(x: GroupElement, y: GroupElement) -> Optional[int]:
    """The integer q with q·y ≤ x < (q+1)·y, or None when x dominates y.

    y must be positive.
    """
    if y.sign() <= 0:
        raise errors.NotPositive(f"Cannot floor-divide by {y}.")
    x._same_rank(y)
    lead_x, lead_y = x.leading(), y.leading()
    if lead_x is None:
        return 0
    if lead_x < lead_y:
        return None
    if lead_x > lead_y:
        return 0 if x.sign() > 0 else -1
    q = math.floor(x.coords[lead_y] / y.coords[lead_y])
    if (x - y * q).sign() < 0:
        q -= 1
    return q


def below_all_multiples(x: GroupElement, step: GroupElement) -> bool:
    """Whether n·step < x for every integer n ≥ 0 (step positive)."""
    return x.sign() > 0 and x.leading() < step.leading()


def format_element(x: GroupElement) -> str:
    return "(" + ", ".join(fmt_fraction(c) for c in x.coords) + ")"


def format_word(word: Sequence[GroupElement]) -> str:
    return "[" + ", ".join(format_element(x) for x in word) + "]"
