from typing import Tuple

import attr

from .block_set import Block


@attr.s(frozen=True, slots=True)
class ChainComponent:
    """A maximal run of blocks joined at bounded junctions.

    `first` and `last` are the positions of the run inside its BlockSet.
    """

    blocks: Tuple[Block, ...] = attr.ib(converter=tuple)
    first: int = attr.ib()
    last: int = attr.ib()

    @property
    def left_bounded(self) -> bool:
        return self.blocks[0].indices.bounded_below()

    @property
    def right_bounded(self) -> bool:
        return self.blocks[-1].indices.bounded_above()

    @property
    def left_kind(self) -> str:
        return "bounded" if self.left_bounded else "unbounded"

    @property
    def right_kind(self) -> str:
        return "bounded" if self.right_bounded else "unbounded"

    def is_finite(self) -> bool:
        return self.left_bounded and self.right_bounded

    def contains_position(self, position: int) -> bool:
        return self.first <= position <= self.last
