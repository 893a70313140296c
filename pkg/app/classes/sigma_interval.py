from typing import Optional, Tuple

import attr

from .block_set import BlockSet
from .lexgroup import GroupElement, format_element, format_word

# Endpoint kinds: an element of the set, a cut that no element attains,
# or the end of the whole set.
ELEMENT, CUT, INFINITY = "element", "cut", "+inf"


@attr.s(frozen=True, slots=True)
class ChainPart:
    """A convex piece of one Z-chain.

    kind is "left", "right" or "line" for periodic rays, "finite" for the
    explicit stretch in between. lo/hi are inclusive element endpoints,
    None where the part is unbounded inside its chain.
    """

    kind: str = attr.ib()
    chain: int = attr.ib()
    lo: Optional[GroupElement] = attr.ib(default=None)
    hi: Optional[GroupElement] = attr.ib(default=None)
    tau: Tuple[GroupElement, ...] = attr.ib(default=(), converter=tuple)
    points: Tuple[GroupElement, ...] = attr.ib(default=(), converter=tuple)


@attr.s(frozen=True, slots=True)
class SigmaInterval:
    members: BlockSet = attr.ib()
    sigma: Tuple[GroupElement, ...] = attr.ib(converter=tuple)
    mu: int = attr.ib()
    left: Optional[GroupElement] = attr.ib()
    left_kind: str = attr.ib()
    right: Optional[GroupElement] = attr.ib()
    right_kind: str = attr.ib()
    witnesses: Tuple[Tuple[int, str], ...] = attr.ib(converter=tuple)

    def describe(self) -> str:
        lo = format_element(self.left) if self.left else self.left_kind
        hi = format_element(self.right) if self.right else self.right_kind
        return f"[{lo}, {hi}] σ={format_word(self.sigma)}"


@attr.s(frozen=True, slots=True)
class Piece:
    """One pseudo-arithmetic piece E_i of a σ-interval."""

    members: BlockSet = attr.ib()
    eta: GroupElement = attr.ib()
    interval: int = attr.ib()
    phase: int = attr.ib()


@attr.s(frozen=True, slots=True)
class Decomposition:
    pieces: Tuple[Piece, ...] = attr.ib(converter=tuple)
    points: Tuple[GroupElement, ...] = attr.ib(converter=tuple)
    intervals: Tuple[SigmaInterval, ...] = attr.ib(converter=tuple)
