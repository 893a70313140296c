import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ... import errors
from ...classes.block_set import (
    Block,
    BlockSet,
    strictly_below,
    validate,
)
from ...classes.index_set import EMPTY, IndexSet
from ...classes.lexgroup import GroupElement, floor_div, rational_ratio
from ...classes.std_form import StdForm

log = logging.getLogger("OAG#Setrep")

MAX_MERGE_ROUNDS = 10_000
MAX_MERGED_LETTERS = 64


def _representative(block: Block) -> GroupElement:
    return block.element(block.any_index())


def merge_periodic(first: Block, second: Block) -> Optional[Block]:
    """One block holding both, when their periods are commensurable."""
    try:
        ratio = rational_ratio(first.total, second.total)
    except errors.NotRationallyDependent:
        return None
    period = first.total * ratio.numerator
    origin = first.base

    placed = []
    for block, t in ((first, ratio.numerator), (second, ratio.denominator)):
        pattern = block.pattern * t
        shift = floor_div(block.base - origin, period)
        if shift is None:
            return None
        start = block.base - origin - period * shift
        running = start
        for r, letter in enumerate(pattern):
            offset, carry = running, 0
            if offset >= period:
                offset, carry = offset - period, 1
            placed.append((block, len(pattern), r, shift + carry, offset))
            running = running + letter

    offsets = sorted({p[4] for p in placed})
    position = {o: j for j, o in enumerate(offsets)}
    width = len(offsets)
    indices = EMPTY
    for block, cycle, r, shift, offset in placed:
        part = block.indices.affine_preimage(cycle, r)
        if part.is_empty():
            continue
        indices = indices | part.affine_image(
            width, shift * width + position[offset]
        )
    letters = [b - a for a, b in zip(offsets, offsets[1:])]
    letters.append(period - (offsets[-1] - offsets[0]))
    log.debug(f"merged two blocks over a common period {period}")
    return Block(origin + offsets[0], letters, indices)


def _galaxy_indices(coarse: Block, fine: Block) -> Optional[List[int]]:
    """Indices of `coarse` within finitely many `fine` periods of fine.base.

    None when that index set is not known to be finite.
    """
    step = fine.total
    if coarse.total.leading() >= step.leading():
        return None

    def near(k: int) -> bool:
        gap = coarse.element(k) - fine.base
        return gap.is_zero() or gap.leading() >= step.leading()

    k0 = coarse.first_index_at_least(fine.base)
    if k0 is None:
        k0 = coarse.indices.max_element()
    found = []
    k = k0
    for _ in range(2 * coarse.length + 2):
        if not near(k):
            break
        found.append(k)
        try:
            k = coarse.indices.prev_in(k)
        except errors.NoPredecessor:
            break
    k = k0
    for _ in range(2 * coarse.length + 2):
        try:
            k = coarse.indices.next_in(k)
        except errors.NoSuccessor:
            break
        if not near(k):
            break
        found.append(k)
    if not found:
        found = [k0]
    return sorted(set(found))


def _split_around(coarse: Block, fine: Block) -> Optional[List[Block]]:
    try:
        near = _galaxy_indices(coarse, fine)
    except errors.OAGError:
        return None
    if near is None:
        return None
    k = coarse.indices
    pieces = [
        coarse.with_indices(k & IndexSet.interval(None, near[0] - 1)),
        coarse.with_indices(k & IndexSet.interval(near[-1] + 1, None)),
    ]
    for index in near:
        if index in k:
            pieces.append(
                Block(
                    coarse.element(index), [fine.total], IndexSet.finite([0])
                )
            )
    return [p for p in pieces if not p.is_empty()]


def _explode(block: Block, step: GroupElement) -> List[Block]:
    return [
        Block(block.element(k), [step], IndexSet.finite([0]))
        for k in block.indices.middle
    ]


def _is_point(block: Block) -> bool:
    return block.indices.is_finite() and block.indices.size() == 1


def _split_at_point(point: Block, other: Block) -> List[Block]:
    """The point plus the parts of `other` below and above it."""
    x = point.element(point.indices.min_element())
    k = other.indices
    try:
        first = other.first_index_at_least(x)
    except errors.UnboundedBelow:
        first = None
    if first is None:
        return [point, other]
    if other.element(first) == x:
        return [other]
    pieces = [
        other.with_indices(k & IndexSet.interval(None, first - 1)),
        point,
        other.with_indices(k & IndexSet.interval(first, None)),
    ]
    return [p for p in pieces if not p.is_empty()]


def _merged_length(first: Block, second: Block) -> Optional[int]:
    try:
        ratio = rational_ratio(first.total, second.total)
    except errors.NotRationallyDependent:
        return None
    return (
        first.length * ratio.numerator + second.length * ratio.denominator
    )


def _resolve(first: Block, second: Block) -> List[Block]:
    for point, other in ((first, second), (second, first)):
        if _is_point(point):
            return _split_at_point(point, other)
    finite = first.indices.is_finite() or second.indices.is_finite()
    length = _merged_length(first, second)
    if length is not None and (not finite or length <= MAX_MERGED_LETTERS):
        merged = merge_periodic(first, second)
        if merged is not None:
            return [merged]
    for small, other in ((first, second), (second, first)):
        if small.indices.is_finite():
            return _explode(small, other.total) + [other]
    for coarse, fine in ((first, second), (second, first)):
        pieces = _split_around(coarse, fine)
        if pieces is not None and len(pieces) > 1:
            return pieces + [fine]
    window = [
        str(x)
        for block in (first, second)
        for k in block.indices.enumerate(block.any_index(), 6)
        for x in [block.element(k)]
    ]
    raise errors.NotRepresentable(
        f"The blocks {first!r} and {second!r} interleave without a "
        "common period.",
        window,
    )


def merge_blocks(
    blocks: Sequence[Block], rank: int, nonneg: bool = False
) -> BlockSet:
    """Re-block an arbitrary family of blocks into a valid BlockSet."""
    blocks = [b for b in blocks if not b.is_empty()]
    for _ in range(MAX_MERGE_ROUNDS):
        blocks.sort(key=lambda b: _representative(b).coords)
        for i in range(len(blocks) - 1):
            if not strictly_below(
                blocks[i].upper_bound(), blocks[i + 1].lower_bound()
            ):
                break
        else:
            return validate(blocks, rank, nonneg)
        blocks[i : i + 2] = _resolve(blocks[i], blocks[i + 1])
    raise errors.NotRepresentable(
        "Re-blocking did not settle; the union has no finite block form."
    )


def union(d: BlockSet, e: BlockSet) -> BlockSet:
    if d.rank != e.rank:
        raise errors.RankMismatch(
            f"Cannot unite a rank {d.rank} set with a rank {e.rank} set."
        )
    return merge_blocks(
        list(d.blocks) + list(e.blocks), d.rank, d.nonneg and e.nonneg
    )


def union_all(sets: Sequence[BlockSet], rank: int) -> BlockSet:
    blocks = [b for s in sets for b in s.blocks]
    return merge_blocks(blocks, rank)


def sample(d: BlockSet, count: int) -> List[GroupElement]:
    """Up to about 2·count elements per block around a reference index."""
    result = []
    for block in d.blocks:
        k0 = block.any_index()
        for k in block.indices.enumerate(k0 - count, 2 * count):
            result.append(block.element(k))
    return result


def same_set(d: BlockSet, e: BlockSet, count: int = 200) -> bool:
    return all(x in e for x in sample(d, count)) and all(
        x in d for x in sample(e, count)
    )


def std_to_blockset(x: StdForm) -> BlockSet:
    if x.intervals:
        raise errors.NotDiscrete(
            "Only point families describe a discrete set; this form has "
            f"{len(x.intervals)} interval families."
        )
    one = GroupElement([1])
    blocks = [Block(GroupElement([lam]), [one], w) for lam, w in x.points]
    return merge_blocks(blocks, 1)


def blockset_to_std(d: BlockSet) -> StdForm:
    if d.rank != 1:
        raise errors.NotLatticeAligned(
            f"Only rank 1 sets live on the integer lattice; this one has "
            f"rank {d.rank}."
        )
    families: Dict[Fraction, IndexSet] = {}
    for block in d.blocks:
        m = block.length
        step = block.total.coords[0]
        num, den = step.numerator, step.denominator
        for r in range(m):
            for s in range(den):
                c = block.base.coords[0] + block.prefix(r).coords[0] + s * step
                w0 = math.floor(c)
                part = block.indices.affine_preimage(m * den, m * s + r)
                if part.is_empty():
                    continue
                lam = c - w0
                w = part.affine_image(num, w0)
                families[lam] = families.get(lam, EMPTY) | w
    return StdForm.build(sorted(families.items(), key=lambda item: item[0]))
