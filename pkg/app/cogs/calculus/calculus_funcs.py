import logging
from typing import Callable, Dict, List, Optional, Set, Tuple

import attr

from ... import errors
from ...classes.block_set import Block, BlockSet, validate
from ...classes.chain import ChainComponent
from ...classes.difference_word import DifferenceWord
from ...classes.index_set import IndexSet
from ...classes.lexgroup import ArchClass, GroupElement, format_element
from ...utils import lcm

log = logging.getLogger("OAG#Calculus")

Position = Tuple[int, int]


@attr.s(frozen=True, slots=True)
class LocalView:
    """The differences around one element, nearest first on both sides."""

    element: GroupElement = attr.ib()
    forward: Tuple[GroupElement, ...] = attr.ib(converter=tuple)
    backward: Tuple[GroupElement, ...] = attr.ib(converter=tuple)


# Positions
def position_of(d: BlockSet, a: GroupElement) -> Position:
    found = d.locate(a)
    if found is None:
        raise errors.NotMember(f"{a} is not an element of the set.")
    return found


def element_at(d: BlockSet, pos: Position) -> GroupElement:
    return d.blocks[pos[0]].element(pos[1])


def step_forward(d: BlockSet, pos: Position) -> Position:
    i, k = pos
    block = d.blocks[i]
    try:
        return i, block.indices.next_in(k)
    except errors.NoSuccessor:
        pass
    if i + 1 == len(d.blocks):
        raise errors.IsMaximal(
            f"{block.element(k)} is the largest element of the set."
        )
    following = d.blocks[i + 1]
    if not following.indices.bounded_below():
        raise errors.ChainEnd(
            f"{block.element(k)} is followed by a block without a least "
            "element, so nothing is its successor."
        )
    return i + 1, following.indices.min_element()


def step_backward(d: BlockSet, pos: Position) -> Position:
    i, k = pos
    block = d.blocks[i]
    try:
        return i, block.indices.prev_in(k)
    except errors.NoPredecessor:
        pass
    if i == 0:
        raise errors.IsMinimal(
            f"{block.element(k)} is the least element of the set."
        )
    preceding = d.blocks[i - 1]
    if not preceding.indices.bounded_above():
        raise errors.IsMinimal(
            f"{block.element(k)} follows a block without a greatest "
            "element, so nothing is its predecessor."
        )
    return i - 1, preceding.indices.max_element()


# Successor and difference
def successor(d: BlockSet, a: GroupElement) -> GroupElement:
    return element_at(d, step_forward(d, position_of(d, a)))


def predecessor(d: BlockSet, a: GroupElement) -> GroupElement:
    return element_at(d, step_backward(d, position_of(d, a)))


def gamma(d: BlockSet, a: GroupElement) -> GroupElement:
    """S(a) − a, or the largest difference when a has no successor."""
    pos = position_of(d, a)
    try:
        return element_at(d, step_forward(d, pos)) - a
    except errors.IsMaximal:
        return diff_set(d)[-1]


def walk_forward(d: BlockSet, a: GroupElement, count: int) -> List:
    """a, S(a), S²(a), … (at most count elements)."""
    pos = position_of(d, a)
    result = [a]
    while len(result) < count:
        try:
            pos = step_forward(d, pos)
        except errors.IsMaximal:
            break
        result.append(element_at(d, pos))
    return result


def walk_backward(d: BlockSet, a: GroupElement, count: int) -> List:
    pos = position_of(d, a)
    result = [a]
    while len(result) < count:
        try:
            pos = step_backward(d, pos)
        except errors.IsMinimal:
            break
        result.append(element_at(d, pos))
    return result


def diff_set(d: BlockSet) -> List[GroupElement]:
    """D′ in increasing order."""
    result: Set[GroupElement] = set()
    for block in d.blocks:
        k = block.indices
        if k.is_finite() and k.size() < 2:
            continue
        for r, gap in k.gap_pairs(block.length):
            result.add(block.segment(r, gap))
    for left, right in zip(d.blocks, d.blocks[1:]):
        if left.indices.bounded_above() and right.indices.bounded_below():
            result.add(
                right.element(right.indices.min_element())
                - left.element(left.indices.max_element())
            )
    if not result:
        raise errors.TooSmall(
            "A difference set needs two elements with one the successor "
            "of the other."
        )
    return sorted(result)


def iter_diff(d: BlockSet, n: int):
    """D⁽ⁿ⁾: the set itself for n = 0, a sorted list of elements after."""
    if n < 0:
        raise errors.ValidationError(
            f"The stage must be at least 0, not {n}."
        )
    if n == 0:
        return d
    current = d
    for stage in range(1, n + 1):
        if current.size() == 1:
            raise errors.Exhausted(
                f"Stage {stage - 1} is a single element, so stage {stage} "
                "has no differences.",
                stage - 1,
            )
        current = BlockSet.from_points(diff_set(current), d.rank)
        log.debug(f"stage {stage} has {current.size()} elements")
    return current.points()


def arch_classes(d: BlockSet) -> List[ArchClass]:
    """Archimedean classes represented in D′, largest first."""
    classes = {ArchClass(x.leading()) for x in diff_set(d)}
    return sorted(classes, key=lambda c: c.leading)


# Chains
def chain_partition(d: BlockSet) -> List[ChainComponent]:
    chains = []
    start = 0
    blocks = d.blocks
    for i in range(1, len(blocks) + 1):
        joined = (
            i < len(blocks)
            and blocks[i - 1].indices.bounded_above()
            and blocks[i].indices.bounded_below()
        )
        if not joined:
            chains.append(ChainComponent(blocks[start:i], start, i - 1))
            start = i
    return chains


def chain_of(d: BlockSet, a: GroupElement) -> ChainComponent:
    i, _ = position_of(d, a)
    for chain in chain_partition(d):
        if chain.contains_position(i):
            return chain
    raise errors.NotMember(f"{a} is not an element of the set.")


def _letter(block: Block, k: int) -> GroupElement:
    return block.segment(k, block.indices.next_in(k) - k)


def _block_pieces(
    block: Block,
) -> Tuple[Optional[List], List[int], Optional[List]]:
    """(left tail letters, explicit indices, right tail letters)."""
    k = block.indices
    span = lcm(k.period, block.length)
    left = right = None
    if k.bounded_below():
        first = k.min_element()
    else:
        first = k.prev_in(k.lo)
        edge = k.prev_in(first)
        left = [
            _letter(block, j)
            for j in range(edge - span + 1, edge + 1)
            if j in k
        ]
    if k.bounded_above():
        last = k.max_element()
    else:
        last = k.next_in(k.hi)
        right = [_letter(block, j) for j in range(last, last + span) if j in k]
    return left, k.elements_between(first, last), right


def chain_word(chain: ChainComponent) -> DifferenceWord:
    middle: List[GroupElement] = []
    left = right = start = previous = None
    for position, block in enumerate(chain.blocks):
        lt, ks, rt = _block_pieces(block)
        points = [block.element(j) for j in ks]
        if position == 0:
            left, start = lt, points[0]
        else:
            middle.append(points[0] - previous)
        middle.extend(b - a for a, b in zip(points, points[1:]))
        previous = points[-1]
        right = rt
    return DifferenceWord.build(start, middle, left, right)


def c_star(d: BlockSet, a: GroupElement) -> ArchClass:
    word = chain_word(chain_of(d, a))
    if not word.right_infinite:
        raise errors.FiniteChain(
            f"The chain of {a} ends on the right, so no class recurs in it."
        )
    return ArchClass(min(x.leading() for x in word.right_tail))


def c_star_set(d: BlockSet) -> List[ArchClass]:
    classes = set()
    for chain in chain_partition(d):
        if chain.right_bounded:
            continue
        word = chain_word(chain)
        classes.add(ArchClass(min(x.leading() for x in word.right_tail)))
    return sorted(classes, key=lambda c: c.leading)


# Selection
def local_view(d: BlockSet, pos: Position, reach: int) -> LocalView:
    here = element_at(d, pos)
    forward, backward = [], []
    cursor, last = pos, here
    for _ in range(reach):
        try:
            cursor = step_forward(d, cursor)
        except errors.IsMaximal:
            break
        x = element_at(d, cursor)
        forward.append(x - last)
        last = x
    cursor, last = pos, here
    for _ in range(reach):
        try:
            cursor = step_backward(d, cursor)
        except errors.IsMinimal:
            break
        x = element_at(d, cursor)
        backward.append(last - x)
        last = x
    return LocalView(here, forward, backward)


def select(
    d: BlockSet, pred: Callable[[LocalView], bool], reach: int
) -> BlockSet:
    """The elements whose local view within `reach` steps satisfies pred.

    Past the thresholds of a block the view only depends on the index
    modulo lcm(period, pattern length), so the result is again a BlockSet.
    """
    blocks = []
    for i, block in enumerate(d.blocks):
        k = block.indices
        span = lcm(k.period, block.length)
        margin = (reach + 1) * span
        lo_cut = k.min_element() if k.bounded_below() else k.lo - margin
        hi_cut = k.max_element() if k.bounded_above() else k.hi + margin

        def keep(j: int) -> bool:
            return j in k and pred(local_view(d, (i, j), reach))

        middle = [j for j in k.elements_between(lo_cut, hi_cut) if keep(j)]
        lo_res = (
            [j for j in range(lo_cut - span, lo_cut) if keep(j)]
            if not k.bounded_below()
            else []
        )
        hi_res = (
            [j for j in range(hi_cut + 1, hi_cut + 1 + span) if keep(j)]
            if not k.bounded_above()
            else []
        )
        chosen = IndexSet.build(span, lo_cut, hi_cut, middle, lo_res, hi_res)
        blocks.append(block.with_indices(chosen))
    return validate(blocks, d.rank, d.nonneg)


# Reports
def _words(word) -> Optional[List[str]]:
    return None if word is None else [format_element(x) for x in word]


def diff_report(d: BlockSet) -> Dict:
    letters = diff_set(d)
    return {
        "diff": [format_element(x) for x in letters],
        "classes": [c.leading for c in arch_classes(d)],
        "blocks": len(d.blocks),
    }


def iter_report(d: BlockSet, n: int) -> Dict:
    if n < 1:
        raise errors.ValidationError(
            f"Pass a stage of at least 1 to take differences, not {n}."
        )
    return {
        "stage": n,
        "diff": [format_element(x) for x in iter_diff(d, n)],
    }


def chains_report(d: BlockSet) -> Dict:
    chains = []
    for chain in chain_partition(d):
        word = chain_word(chain)
        chains.append(
            {
                "blocks": [chain.first, chain.last],
                "left": chain.left_kind,
                "right": chain.right_kind,
                "start": format_element(word.start),
                "middle": _words(word.middle),
                "left_tail": _words(word.left_tail),
                "right_tail": _words(word.right_tail),
            }
        )
    return {"chains": chains}


def cstar_report(d: BlockSet) -> Dict:
    return {"classes": [c.leading for c in c_star_set(d)]}
