"""Eventually periodic difference words of Z-chains.

The word reads ... L L L middle R R R ... from left to right. Either tail
may be missing, in which case the word stops on that side. `start` is the
chain element whose difference is the first letter of the middle (or of
the right tail when the middle is empty).
"""
from typing import List, Optional, Sequence, Set, Tuple

import attr

from .. import errors
from ..utils import primitive_root, rotate
from .lexgroup import ArchClass, GroupElement, format_word

Word = Tuple[GroupElement, ...]


def _word(value: Optional[Sequence[GroupElement]]) -> Optional[Word]:
    if value is None:
        return None
    value = tuple(value)
    return value or None


def _reverse(word: Optional[Word]) -> Optional[Word]:
    return tuple(reversed(word)) if word else None


@attr.s(frozen=True, slots=True, repr=False)
class DifferenceWord:
    start: GroupElement = attr.ib()
    middle: Word = attr.ib(converter=tuple)
    left_tail: Optional[Word] = attr.ib(default=None, converter=_word)
    right_tail: Optional[Word] = attr.ib(default=None, converter=_word)

    @classmethod
    def build(
        cls,
        start: GroupElement,
        middle: Sequence[GroupElement],
        left_tail: Optional[Sequence[GroupElement]] = None,
        right_tail: Optional[Sequence[GroupElement]] = None,
    ) -> "DifferenceWord":
        """Reduce both tails to primitive roots and absorb the middle."""
        middle = list(middle)
        right = _word(right_tail)
        left = _word(left_tail)
        if right:
            right = primitive_root(right)
            while middle and middle[-1] == right[-1]:
                middle.pop()
                right = rotate(right, -1)
        if left:
            left = primitive_root(left)
            while middle and middle[0] == left[0]:
                start = start + middle.pop(0)
                left = rotate(left, 1)
        return cls(start, middle, left, right)

    @property
    def right_infinite(self) -> bool:
        return self.right_tail is not None

    @property
    def left_infinite(self) -> bool:
        return self.left_tail is not None

    def letter(self, j: int) -> GroupElement:
        """Letter j, counted from the start of the middle."""
        if j < 0:
            if not self.left_tail:
                raise IndexError(f"The word has no letter at {j}.")
            return self.left_tail[j % len(self.left_tail)]
        if j < len(self.middle):
            return self.middle[j]
        if not self.right_tail:
            raise IndexError(f"The word has no letter at {j}.")
        j -= len(self.middle)
        return self.right_tail[j % len(self.right_tail)]

    def letters(self, start: int, count: int) -> List[GroupElement]:
        result = []
        for j in range(start, start + count):
            try:
                result.append(self.letter(j))
            except IndexError:
                if j >= 0:
                    break
        return result

    def alphabet(self) -> Set[GroupElement]:
        result = set(self.middle)
        result.update(self.left_tail or ())
        result.update(self.right_tail or ())
        return result

    def classes(self) -> Set[ArchClass]:
        return {ArchClass(x.leading()) for x in self.alphabet()}

    def right_factors(self, k: int) -> Set[Word]:
        """Length-k factors that occur infinitely often to the right."""
        if not self.right_tail:
            raise errors.FiniteWord(
                "The word stops on the right, so no factor recurs forever."
            )
        tail = self.right_tail
        n = len(tail)
        return {
            tuple(tail[(i + j) % n] for j in range(k)) for i in range(n)
        }

    def reversed(self) -> "DifferenceWord":
        """The word read from right to left (start is not meaningful)."""
        return DifferenceWord(
            self.start,
            tuple(reversed(self.middle)),
            _reverse(self.right_tail),
            _reverse(self.left_tail),
        )

    def __repr__(self) -> str:
        parts = []
        if self.left_tail:
            parts.append(f"({format_word(self.left_tail)})^ω")
        parts.append(format_word(self.middle))
        if self.right_tail:
            parts.append(f"({format_word(self.right_tail)})^ω")
        return "DifferenceWord(" + " ".join(parts) + ")"
