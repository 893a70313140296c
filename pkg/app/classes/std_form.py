"""One-variable sets over the reals with a distinguished integer lattice.

A StdForm is a finite union of point families {w + λ : w ∈ W} and open
interval families {(w + λ₀, w + λ₁) : w ∈ W} with rational offsets in
[0, 1] and ultimately periodic W. Internally everything is reduced to
atoms of [0, 1): the breakpoints themselves and the open gaps between
them, each carrying the IndexSet of integer translates it occupies.
"""
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import attr

from .. import errors
from .index_set import EMPTY, INTEGERS, IndexSet

Atom = Tuple[str, Fraction, Fraction]


def _atoms(breaks: List[Fraction]) -> List[Atom]:
    bounds = breaks + [Fraction(1)]
    result: List[Atom] = []
    for a, b in zip(bounds, bounds[1:]):
        result.append(("point", a, a))
        result.append(("open", a, b))
    return result


@attr.s(frozen=True, slots=True)
class StdForm:
    points: Tuple[Tuple[Fraction, IndexSet], ...] = attr.ib(converter=tuple)
    intervals: Tuple[Tuple[Fraction, Fraction, IndexSet], ...] = attr.ib(
        converter=tuple
    )

    @classmethod
    def build(
        cls,
        points: Iterable[Tuple[Fraction, IndexSet]] = (),
        intervals: Iterable[Tuple[Fraction, Fraction, IndexSet]] = (),
    ) -> "StdForm":
        raw = cls(
            tuple((Fraction(lam), w) for lam, w in points),
            tuple((Fraction(a), Fraction(b), w) for a, b, w in intervals),
        )
        for lam, _ in raw.points:
            if not 0 <= lam < 1:
                raise errors.ValidationError(
                    f"Point offsets must lie in [0, 1), got {lam}."
                )
        for a, b, _ in raw.intervals:
            if not 0 <= a < b <= 1:
                raise errors.ValidationError(
                    f"Interval offsets need 0 ≤ λ₀ < λ₁ ≤ 1, got ({a}, {b})."
                )
        return raw._normalized(raw.breaks())

    @classmethod
    def empty(cls) -> "StdForm":
        return cls((), ())

    @classmethod
    def line(cls) -> "StdForm":
        return cls.build([(0, INTEGERS)], [(0, 1, INTEGERS)])

    def breaks(self) -> List[Fraction]:
        values = {Fraction(0)}
        values.update(lam for lam, _ in self.points)
        for a, b, _ in self.intervals:
            values.add(a)
            if b < 1:
                values.add(b)
        return sorted(values)

    def atom_indices(self, atom: Atom) -> IndexSet:
        kind, a, b = atom
        result = EMPTY
        if kind == "point":
            for lam, w in self.points:
                if lam == a:
                    result = result | w
            for lo, hi, w in self.intervals:
                if lo < a < hi:
                    result = result | w
        else:
            for lo, hi, w in self.intervals:
                if lo <= a and b <= hi:
                    result = result | w
        return result

    def _normalized(self, breaks: List[Fraction]) -> "StdForm":
        table = {atom: self.atom_indices(atom) for atom in _atoms(breaks)}
        return _from_table(breaks, table)

    # Membership
    def member(self, x) -> bool:
        x = Fraction(x)
        w = math.floor(x)
        f = x - w
        for lam, ws in self.points:
            if lam == f and w in ws:
                return True
        for a, b, ws in self.intervals:
            if a < f < b and w in ws:
                return True
        return False

    def __contains__(self, x) -> bool:
        return self.member(x)

    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    # Boolean algebra
    def _combine(
        self, other: "StdForm", op: Callable[[IndexSet, IndexSet], IndexSet]
    ) -> "StdForm":
        breaks = sorted(set(self.breaks()) | set(other.breaks()))
        table = {
            atom: op(self.atom_indices(atom), other.atom_indices(atom))
            for atom in _atoms(breaks)
        }
        return _from_table(breaks, table)

    def union(self, other: "StdForm") -> "StdForm":
        return self._combine(other, lambda a, b: a | b)

    def intersect(self, other: "StdForm") -> "StdForm":
        return self._combine(other, lambda a, b: a & b)

    def complement(self) -> "StdForm":
        breaks = self.breaks()
        table = {
            atom: self.atom_indices(atom).complement()
            for atom in _atoms(breaks)
        }
        return _from_table(breaks, table)

    def split(self) -> Tuple["StdForm", "StdForm"]:
        """(point families, interval families)."""
        return StdForm(self.points, ()), StdForm((), self.intervals)


def _from_table(
    breaks: List[Fraction], table: Dict[Atom, IndexSet]
) -> StdForm:
    breaks = list(breaks)
    # Drop breakpoints that separate nothing.
    changed = True
    while changed:
        changed = False
        bounds = breaks + [Fraction(1)]
        for i in range(1, len(breaks)):
            left = ("open", bounds[i - 1], bounds[i])
            mid = ("point", bounds[i], bounds[i])
            right = ("open", bounds[i], bounds[i + 1])
            if table[left] == table[mid] == table[right]:
                table[("open", bounds[i - 1], bounds[i + 1])] = table[left]
                breaks.pop(i)
                changed = True
                break
    points = []
    intervals = []
    for kind, a, b in _atoms(breaks):
        w = table[(kind, a, b)]
        if w.is_empty():
            continue
        if kind == "point":
            points.append((a, w))
        else:
            intervals.append((a, b, w))
    return StdForm(tuple(points), tuple(intervals))
