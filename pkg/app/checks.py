from typing import Sequence

import config
from app import errors
from app.classes.block_set import BlockSet


def valid_rank(rank: int) -> int:
    if not config.MIN_RANK <= rank <= config.MAX_RANK:
        raise errors.ConversionError(
            f"The rank must be between {config.MIN_RANK} and "
            f"{config.MAX_RANK}, not {rank}. Check OAG_RANK or --rank."
        )
    return rank


def positive(value: int, name: str) -> int:
    if value < 1:
        raise errors.ConversionError(
            f"`{name}` must be at least 1, not {value}."
        )
    return value


def same_rank(sets: Sequence[BlockSet], rank: int) -> None:
    for d in sets:
        if d.rank != rank:
            raise errors.RankMismatch(
                f"A set of rank {d.rank} was given, but the session rank is "
                f"{rank}. Set OAG_RANK or --rank to match."
            )


def nonempty(d: BlockSet, what: str = "This operation") -> BlockSet:
    if d.is_empty():
        raise errors.Empty(f"{what} needs a nonempty set.")
    return d
