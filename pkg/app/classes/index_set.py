"""Ultimately periodic subsets of the integers.

An IndexSet is described by a period p, two thresholds lo ≤ hi + 1, an
explicit middle inside [lo, hi] and two residue sets mod p: x > hi is a
member iff x mod p is a hi residue, x < lo is a member iff x mod p is a
lo residue. Instances are always kept in canonical form, so two sets
are equal iff their fields are.
"""
import bisect
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional
from typing import Set, Tuple

import attr

from .. import errors
from ..utils import lcm


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _minimal_period(residues: FrozenSet[int], period: int) -> int:
    for d in _divisors(period):
        if all((r + d) % period in residues for r in residues):
            return d
    return period


def _lift(residues: Iterable[int], period: int, new_period: int) -> Set[int]:
    return {
        r + period * j
        for r in residues
        for j in range(new_period // period)
    }


@attr.s(frozen=True, slots=True, repr=False)
class IndexSet:
    period: int = attr.ib()
    lo: int = attr.ib()
    hi: int = attr.ib()
    middle: Tuple[int, ...] = attr.ib(converter=lambda v: tuple(sorted(v)))
    lo_residues: FrozenSet[int] = attr.ib(converter=frozenset)
    hi_residues: FrozenSet[int] = attr.ib(converter=frozenset)

    # Construction
    @classmethod
    def build(
        cls,
        period: int = 1,
        lo: Optional[int] = None,
        hi: Optional[int] = None,
        middle: Iterable[int] = (),
        lo_residues: Iterable[int] = (),
        hi_residues: Iterable[int] = (),
    ) -> "IndexSet":
        """Canonical set from loosely specified data.

        Members are the middle, x > hi with x mod period in hi_residues
        and x < lo with x mod period in lo_residues.
        """
        if period < 1:
            raise errors.ValidationError(
                f"The period must be a positive integer, not {period}."
            )
        middle = frozenset(int(m) for m in middle)
        lo_res = frozenset(int(r) % period for r in lo_residues)
        hi_res = frozenset(int(r) % period for r in hi_residues)
        if lo is None and lo_res:
            raise errors.ValidationError(
                "Lower residues need a finite lower threshold."
            )
        if hi is None and hi_res:
            raise errors.ValidationError(
                "Upper residues need a finite upper threshold."
            )

        def rule(x: int) -> bool:
            if x in middle:
                return True
            if hi is not None and x > hi and x % period in hi_res:
                return True
            return lo is not None and x < lo and x % period in lo_res

        anchors = list(middle) + [t for t in (lo, hi) if t is not None]
        lo_w = min(anchors) if anchors else 0
        hi_w = max(anchors) if anchors else -1
        return cls._from_rule(period, lo_w, hi_w, lo_res, hi_res, rule)

    @classmethod
    def _from_rule(
        cls,
        period: int,
        lo: int,
        hi: int,
        lo_res: Iterable[int],
        hi_res: Iterable[int],
        rule: Callable[[int], bool],
    ) -> "IndexSet":
        lo_res = frozenset(r % period for r in lo_res)
        hi_res = frozenset(r % period for r in hi_res)
        hi = max(hi, lo - 1)

        d = lcm(
            _minimal_period(lo_res, period), _minimal_period(hi_res, period)
        )
        p = d
        lo_res = frozenset(r % p for r in lo_res)
        hi_res = frozenset(r % p for r in hi_res)

        def member(x: int) -> bool:
            if x > hi:
                return x % p in hi_res
            if x < lo:
                return x % p in lo_res
            return rule(x)

        # Smallest threshold above which the hi rule holds.
        top = hi
        while top >= lo - p:
            if member(top) != (top % p in hi_res):
                break
            top -= 1
        else:
            return cls(p, 0, -1, (), lo_res, lo_res)

        bottom = lo
        while bottom <= hi + p:
            if member(bottom) != (bottom % p in lo_res):
                break
            bottom += 1

        if bottom > top + 1:
            cut = min(range(top + 1, bottom + 1), key=lambda c: (abs(c), c))
            return cls(p, cut, cut - 1, (), lo_res, hi_res)
        mid = [x for x in range(bottom, top + 1) if member(x)]
        return cls(p, bottom, top, mid, lo_res, hi_res)

    @classmethod
    def empty(cls) -> "IndexSet":
        return cls.build()

    @classmethod
    def integers(cls) -> "IndexSet":
        return cls.build(1, 0, -1, (), [0], [0])

    @classmethod
    def naturals(cls) -> "IndexSet":
        return cls.interval(0, None)

    @classmethod
    def finite(cls, values: Iterable[int]) -> "IndexSet":
        return cls.build(middle=values)

    @classmethod
    def interval(cls, a: Optional[int], b: Optional[int]) -> "IndexSet":
        """All k with a ≤ k ≤ b; None leaves that side open."""
        return cls.progression(0, 1, a, b)

    @classmethod
    def progression(
        cls,
        residue: int,
        modulus: int,
        a: Optional[int] = None,
        b: Optional[int] = None,
    ) -> "IndexSet":
        """All k ≡ residue (mod modulus) with a ≤ k ≤ b."""
        if modulus < 1:
            raise errors.ValidationError(
                f"The modulus must be positive, not {modulus}."
            )
        residue %= modulus
        if a is not None and b is not None:
            return cls.finite(
                k for k in range(a, b + 1) if k % modulus == residue
            )
        if a is None and b is None:
            return cls.build(modulus, 0, -1, (), [residue], [residue])
        if b is None:
            return cls.build(modulus, None, a - 1, (), (), [residue])
        return cls.build(modulus, b + 1, None, (), [residue], ())

    # Membership and order
    def __contains__(self, k: int) -> bool:
        return self.member(k)

    def member(self, k: int) -> bool:
        if k > self.hi:
            return k % self.period in self.hi_residues
        if k < self.lo:
            return k % self.period in self.lo_residues
        i = bisect.bisect_left(self.middle, k)
        return i < len(self.middle) and self.middle[i] == k

    def is_empty(self) -> bool:
        return not (self.middle or self.lo_residues or self.hi_residues)

    def bounded_below(self) -> bool:
        return not self.lo_residues

    def bounded_above(self) -> bool:
        return not self.hi_residues

    def is_finite(self) -> bool:
        return self.bounded_below() and self.bounded_above()

    def size(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        if not self.is_finite():
            return None
        return len(self.middle)

    def _next_residue(self, x: int, residues: FrozenSet[int]) -> Optional[int]:
        if not residues:
            return None
        p = self.period
        return min(x + (r - x) % p for r in residues)

    def _prev_residue(self, x: int, residues: FrozenSet[int]) -> Optional[int]:
        if not residues:
            return None
        p = self.period
        return max(x - (x - r) % p for r in residues)

    def next_in(self, k: int) -> int:
        """Least element strictly above k."""
        x = k + 1
        if x < self.lo:
            y = self._next_residue(x, self.lo_residues)
            if y is not None and y < self.lo:
                return y
            x = self.lo
        if x <= self.hi:
            i = bisect.bisect_left(self.middle, x)
            if i < len(self.middle):
                return self.middle[i]
            x = self.hi + 1
        y = self._next_residue(x, self.hi_residues)
        if y is None:
            raise errors.NoSuccessor(f"No element of the set lies above {k}.")
        return y

    def prev_in(self, k: int) -> int:
        """Greatest element strictly below k."""
        x = k - 1
        if x > self.hi:
            y = self._prev_residue(x, self.hi_residues)
            if y is not None and y > self.hi:
                return y
            x = self.hi
        if x >= self.lo:
            i = bisect.bisect_right(self.middle, x)
            if i > 0:
                return self.middle[i - 1]
            x = self.lo - 1
        y = self._prev_residue(x, self.lo_residues)
        if y is None:
            raise errors.NoPredecessor(
                f"No element of the set lies below {k}."
            )
        return y

    def min_element(self) -> int:
        if self.is_empty():
            raise errors.Empty("The set is empty.")
        if not self.bounded_below():
            raise errors.UnboundedBelow("The set has no least element.")
        return self.next_in(self.lo - 1)

    def max_element(self) -> int:
        if self.is_empty():
            raise errors.Empty("The set is empty.")
        if not self.bounded_above():
            raise errors.UnboundedAbove("The set has no greatest element.")
        return self.prev_in(self.hi + 1)

    def enumerate(self, start: int, count: int) -> List[int]:
        """The first count elements that are ≥ start."""
        result: List[int] = []
        k = start - 1
        while len(result) < count:
            try:
                k = self.next_in(k)
            except errors.NoSuccessor:
                break
            result.append(k)
        return result

    def elements_between(self, a: int, b: int) -> List[int]:
        return [k for k in range(a, b + 1) if self.member(k)]

    # Gaps
    def gap_pairs(self, modulus: int = 1) -> Set[Tuple[int, int]]:
        """All (k mod modulus, next(k) − k) for non-maximal k."""
        span = lcm(self.period, modulus)
        start = (
            self.min_element()
            if self.bounded_below() and not self.is_empty()
            else self.lo - 2 * span
        )
        stop = (
            self.max_element()
            if self.bounded_above() and not self.is_empty()
            else self.hi + 2 * span
        )
        window = self.elements_between(start, stop)
        if window:
            try:
                window.append(self.next_in(window[-1]))
            except errors.NoSuccessor:
                pass
        if len(window) < 2:
            raise errors.TooFewElements(
                "Gaps need a set with at least two elements."
            )
        return {
            (a % modulus, b - a) for a, b in zip(window, window[1:])
        }

    def gap_sizes(self) -> Set[int]:
        return {g for _, g in self.gap_pairs(1)}

    # Algebra
    def _combine(
        self, other: "IndexSet", op: Callable[[bool, bool], bool]
    ) -> "IndexSet":
        p = lcm(self.period, other.period)

        def residues(attr_name: str) -> Set[int]:
            mine = _lift(getattr(self, attr_name), self.period, p)
            theirs = _lift(getattr(other, attr_name), other.period, p)
            return {r for r in range(p) if op(r in mine, r in theirs)}

        return IndexSet._from_rule(
            p,
            min(self.lo, other.lo),
            max(self.hi, other.hi),
            residues("lo_residues"),
            residues("hi_residues"),
            lambda x: op(self.member(x), other.member(x)),
        )

    def union(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a or b)

    def intersect(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "IndexSet":
        everything = set(range(self.period))
        return IndexSet._from_rule(
            self.period,
            self.lo,
            self.hi,
            everything - self.lo_residues,
            everything - self.hi_residues,
            lambda x: not self.member(x),
        )

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def __invert__(self) -> "IndexSet":
        return self.complement()

    def shift(self, c: int) -> "IndexSet":
        """{k + c : k in self}."""
        return IndexSet(
            self.period,
            self.lo + c,
            self.hi + c,
            (m + c for m in self.middle),
            ((r + c) % self.period for r in self.lo_residues),
            ((r + c) % self.period for r in self.hi_residues),
        )

    def negate(self) -> "IndexSet":
        """{−k : k in self}."""
        p = self.period
        return IndexSet(
            p,
            -self.hi,
            -self.lo,
            (-m for m in self.middle),
            ((-r) % p for r in self.hi_residues),
            ((-r) % p for r in self.lo_residues),
        )

    def affine_preimage(self, a: int, b: int) -> "IndexSet":
        """{n : a·n + b in self} for a positive integer a."""
        if a < 1:
            raise errors.ValidationError("The scale must be positive.")
        p = self.period
        return IndexSet._from_rule(
            p,
            -((b - self.lo) // a),
            (self.hi - b) // a,
            (r for r in range(p) if (a * r + b) % p in self.lo_residues),
            (r for r in range(p) if (a * r + b) % p in self.hi_residues),
            lambda n: self.member(a * n + b),
        )

    def affine_image(self, a: int, c: int) -> "IndexSet":
        """{a·n + c : n in self} for a positive integer a."""
        if a < 1:
            raise errors.ValidationError("The scale must be positive.")
        p = a * self.period

        def rule(x: int) -> bool:
            return (x - c) % a == 0 and self.member((x - c) // a)

        return IndexSet._from_rule(
            p,
            a * self.lo + c,
            a * self.hi + c,
            ((a * r + c) % p for r in self.lo_residues),
            ((a * r + c) % p for r in self.hi_residues),
            rule,
        )

    # Serialization
    def to_json(self) -> Dict:
        def side(threshold: int, residues: FrozenSet[int]) -> Dict:
            return {
                "threshold": threshold if residues else None,
                "residues": sorted(residues),
            }

        return {
            "period": self.period,
            "hi": side(self.hi, self.hi_residues),
            "lo": side(self.lo, self.lo_residues),
            "middle": list(self.middle),
        }

    @classmethod
    def from_json(cls, data: Dict) -> "IndexSet":
        try:
            hi = data.get("hi") or {}
            lo = data.get("lo") or {}
            return cls.build(
                int(data.get("period", 1)),
                lo.get("threshold"),
                hi.get("threshold"),
                data.get("middle", []),
                lo.get("residues", []),
                hi.get("residues", []),
            )
        except (AttributeError, TypeError, ValueError) as e:
            raise errors.ConversionError(
                f"I couldn't read {data!r} as an index set: {e}"
            )

    def describe(self) -> str:
        parts = []
        p = self.period
        if self.lo_residues:
            parts.append(
                f"x<{self.lo} with x mod {p} in {sorted(self.lo_residues)}"
            )
        if self.middle:
            parts.append("{" + ", ".join(map(str, self.middle)) + "}")
        if self.hi_residues:
            parts.append(
                f"x>{self.hi} with x mod {p} in {sorted(self.hi_residues)}"
            )
        return " ∪ ".join(parts) if parts else "∅"

    def __repr__(self) -> str:
        return f"IndexSet({self.describe()})"


NATURALS = IndexSet.naturals()
INTEGERS = IndexSet.integers()
EMPTY = IndexSet.empty()