import logging
from itertools import groupby
from typing import Dict, List, Optional, Sequence, Tuple

import attr

from ... import errors
from ...classes.block_set import BlockSet, validate
from ...classes.chain import ChainComponent
from ...classes.difference_word import DifferenceWord, Word
from ...classes.index_set import IndexSet
from ...classes.lexgroup import (
    GroupElement,
    floor_div,
    format_element,
    format_word,
)
from ...classes.sigma_interval import (
    CUT,
    ELEMENT,
    INFINITY,
    ChainPart,
    Decomposition,
    Piece,
    SigmaInterval,
)
from ...database import database
from ...utils import is_rotation, lcm, primitive_root, timed
from ..calculus import calculus_funcs
from ..setrep import setrep_funcs

log = logging.getLogger("OAG#Structure")

MAX_PARTITION_ROUNDS = 64

E0_PREFIX, E1_PREFIX, EQUAL = "E0_prefix_of_E1", "E1_prefix_of_E0", "Equal"


@attr.s(frozen=True, slots=True)
class PeriodReport:
    period: int = attr.ib()
    offset: int = attr.ib()
    k: int = attr.ib()
    counts: Dict[int, int] = attr.ib(factory=dict)


# Words
def factor_count(word: DifferenceWord, k: int) -> int:
    if k < 1:
        raise errors.ValidationError(f"Factor lengths start at 1, not {k}.")
    return len(word.right_factors(k))


def primitive_generator(sigma: Sequence) -> Tuple:
    if not sigma:
        raise errors.ValidationError("The empty word has no generator.")
    return primitive_root(sigma)


def detect_period(word: DifferenceWord, bound: int) -> PeriodReport:
    """Eventual period of the right side, found from factor counts.

    Finds k with f(k) = f(k+1); every recurring factor of length k then
    has exactly one recurring extension, and following those extensions
    cycles with the period of the word.
    """
    if not word.right_infinite:
        raise errors.FiniteWord(
            "The word stops on the right, so it has no eventual period."
        )
    counts: Dict[int, int] = {}
    k = 1
    while True:
        for j in (k, k + 1):
            if j not in counts:
                counts[j] = factor_count(word, j)
            if counts[j] > bound:
                raise errors.BoundViolated(
                    f"f({j}) = {counts[j]} exceeds the bound {bound}.", j
                )
        if counts[k] == counts[k + 1]:
            break
        k += 1

    extension = {u[:-1]: u for u in word.right_factors(k + 1)}
    tail = word.right_tail
    current = tuple(tail[j % len(tail)] for j in range(k))
    seen = {current: 0}
    step = 0
    while True:
        current = extension[current][1:]
        step += 1
        if current in seen:
            period = step - seen[current]
            break
        seen[current] = step

    offset = len(word.middle)
    while offset > 0 and word.letter(offset - 1) == word.letter(
        offset - 1 + period
    ):
        offset -= 1

    for j in range(offset, len(word.middle) + 4 * period):
        if word.letter(j) != word.letter(j + period):
            raise errors.VerificationFailed(
                f"Period {period} fails at position {j}.",
                {"period": period, "position": j},
            )
    if period != len(tail):
        raise errors.VerificationFailed(
            f"The detected period {period} disagrees with the stored tail "
            f"of length {len(tail)}.",
            {"period": period, "tail": len(tail)},
        )
    log.debug(f"period {period} from k={k}, offset {offset}")
    return PeriodReport(period, offset, k, counts)


def eventual_periods(
    chain: ChainComponent,
) -> Tuple[Optional[int], Optional[int]]:
    """(left period, right period) of a chain, None on a bounded side."""
    word = calculus_funcs.chain_word(chain)
    left = right = None
    if word.right_infinite:
        right = detect_period(word, len(word.right_tail)).period
    if word.left_infinite:
        rev = word.reversed()
        left = detect_period(rev, len(rev.right_tail)).period
    return left, right


def classify_chain(chain: ChainComponent) -> str:
    word = calculus_funcs.chain_word(chain)
    if word.left_infinite and word.right_infinite:
        if not word.middle and word.left_tail == word.right_tail:
            return "line"
        return "two-sided"
    if word.right_infinite:
        return "right"
    if word.left_infinite:
        return "left"
    return "finite"


def sigma_witnesses(
    chain: ChainComponent, sigma: Sequence[GroupElement]
) -> Tuple[Optional[GroupElement], Optional[GroupElement]]:
    """(left, right) witnesses of a chain reading σ at its ends.

    The word is …σσσ up to `left` and σσσ… from `right` on. A side that
    never settles into σ gets None.
    """
    gen = primitive_generator(sigma)
    word = calculus_funcs.chain_word(chain)
    left = right = None
    if word.right_tail and len(word.right_tail) == len(gen):
        p = word.start
        for letter in word.middle:
            p = p + letter
        tail = word.right_tail
        for j in range(len(tail)):
            if tail[j:] + tail[:j] == gen:
                right = p
                break
            p = p + tail[j]
    if word.left_tail and len(word.left_tail) == len(gen):
        p = word.start
        tail = word.left_tail
        n = len(tail)
        for j in range(n):
            if tail[n - j :] + tail[: n - j] == gen:
                left = p
                break
            p = p - tail[n - j - 1]
    return left, right


def is_sigma_chain(
    chain: ChainComponent, sigma: Sequence[GroupElement]
) -> bool:
    word = calculus_funcs.chain_word(chain)
    if word.middle or word.left_tail != word.right_tail:
        return False
    return None not in sigma_witnesses(chain, sigma)


def sigma_kinds(
    chain: ChainComponent, sigma: Sequence[GroupElement]
) -> List[str]:
    left, right = sigma_witnesses(chain, sigma)
    kinds = []
    if is_sigma_chain(chain, sigma):
        kinds.append("sigma-chain")
    if right is not None:
        kinds.append("eventual-right")
    if left is not None:
        kinds.append("eventual-left")
    return kinds


# Chain parts
def chain_parts(
    d: BlockSet, index: int, chain: ChainComponent
) -> List[ChainPart]:
    """Split a chain into periodic rays and the finite stretch between."""
    word = calculus_funcs.chain_word(chain)
    left, right, middle = word.left_tail, word.right_tail, word.middle
    if left and right and not middle and left == right:
        return [ChainPart("line", index, tau=right)]

    points = [word.start]
    for letter in middle:
        points.append(points[-1] + letter)
    last = points[-1]
    parts: List[ChainPart] = []
    if left:
        if right and not middle:
            # The shared element goes to the right ray.
            hi = calculus_funcs.predecessor(d, word.start)
        else:
            hi = word.start
        parts.append(ChainPart("left", index, hi=hi, tau=left))
        points = points[1:]
    if right:
        points = points[:-1]
    if points:
        parts.append(ChainPart("finite", index, points=points))
    if right:
        parts.append(ChainPart("right", index, lo=last, tau=right))
    return parts


def restrict(
    d: BlockSet,
    chain: ChainComponent,
    lo: Optional[GroupElement] = None,
    hi: Optional[GroupElement] = None,
) -> BlockSet:
    """Elements of the chain between lo and hi, both inclusive."""
    lo_pos = calculus_funcs.position_of(d, lo) if lo is not None else None
    hi_pos = calculus_funcs.position_of(d, hi) if hi is not None else None
    blocks = []
    for i in range(chain.first, chain.last + 1):
        k = d.blocks[i].indices
        if lo_pos is not None:
            if i < lo_pos[0]:
                continue
            if i == lo_pos[0]:
                k = k.intersect(IndexSet.interval(lo_pos[1], None))
        if hi_pos is not None:
            if i > hi_pos[0]:
                continue
            if i == hi_pos[0]:
                k = k.intersect(IndexSet.interval(None, hi_pos[1]))
        blocks.append(d.blocks[i].with_indices(k))
    return validate(blocks, d.rank)


def part_members(
    d: BlockSet, chain: ChainComponent, part: ChainPart
) -> BlockSet:
    if part.kind == "finite":
        return BlockSet.from_points(part.points, d.rank)
    return restrict(d, chain, part.lo, part.hi)


def chain_members(d: BlockSet, chain: ChainComponent) -> BlockSet:
    return validate(chain.blocks, d.rank)


# Uniformity
def _windows(word: DifferenceWord, n: int):
    """Every run of n consecutive letters, up to periodicity."""
    first = -len(word.left_tail) - n if word.left_infinite else 0
    if word.right_infinite:
        last = len(word.middle) + len(word.right_tail)
    else:
        last = len(word.middle) - n
    for j in range(first, last + 1):
        window = word.letters(j, n)
        if len(window) == n:
            yield window


def is_uniformized(d: BlockSet) -> Optional[int]:
    """The least N such that every run of N successive differences holds
    all of D′, or None when no N works."""
    try:
        alphabet = set(calculus_funcs.diff_set(d))
    except errors.TooSmall:
        return 1
    words = [
        calculus_funcs.chain_word(c) for c in calculus_funcs.chain_partition(d)
    ]
    limit = 1 + sum(
        len(w.middle) + len(w.left_tail or ()) + len(w.right_tail or ())
        for w in words
    )
    for n in range(1, limit + 1):
        if all(
            alphabet <= set(window) for w in words for window in _windows(w, n)
        ):
            return n
    return None


def delta_components(
    d: BlockSet, delta: GroupElement
) -> List[Optional[int]]:
    """Distinct lengths of maximal runs of δ steps, None for endless runs."""
    lengths = set()
    for chain in calculus_funcs.chain_partition(d):
        word = calculus_funcs.chain_word(chain)
        tails = (word.left_tail, word.right_tail)
        if any(t and set(t) == {delta} for t in tails):
            lengths.add(None)
        first = -2 * len(word.left_tail) if word.left_infinite else 0
        stop = len(word.middle)
        if word.right_infinite:
            stop += 2 * len(word.right_tail)
        letters = word.letters(first, stop - first)
        pos = 0
        for is_delta, run in groupby(letters, key=lambda x: x == delta):
            size = len(list(run))
            # Runs cut by the window recur whole further in.
            open_left = pos == 0 and word.left_infinite
            open_right = pos + size == len(letters) and word.right_infinite
            if is_delta and not (open_left or open_right):
                lengths.add(size)
            pos += size
    return sorted(lengths, key=lambda v: (v is None, v or 0))


def is_pseudo_arithmetic(e: BlockSet) -> Optional[GroupElement]:
    """η when E′ = {η}, else None."""
    try:
        diffs = calculus_funcs.diff_set(e)
    except errors.TooSmall:
        return None
    return diffs[0] if len(diffs) == 1 else None


@timed(log)
def uniformize(d: BlockSet) -> List[Tuple[BlockSet, Optional[int]]]:
    """Convex pieces, each with its uniformity bound N."""
    pieces = []
    for index, chain in enumerate(calculus_funcs.chain_partition(d)):
        for part in chain_parts(d, index, chain):
            members = part_members(d, chain, part)
            pieces.append((members, is_uniformized(members)))
    log.debug(f"uniformized into {len(pieces)} pieces")
    return pieces


# Archimedean partition
def _split_by_top_class(e: BlockSet) -> Tuple[BlockSet, BlockSet]:
    top = calculus_funcs.arch_classes(e)[0]

    def in_top(view) -> bool:
        # Without a successor γ is max E′, which lies in the top class.
        if not view.forward:
            return True
        return view.forward[0].leading() == top.leading

    return (
        calculus_funcs.select(e, in_top, 1),
        calculus_funcs.select(e, lambda v: not in_top(v), 1),
    )


def _order_key(e: BlockSet):
    first = e.blocks[0]
    k = first.indices
    anchor = k.min_element() if k.bounded_below() else first.any_index()
    return first.element(anchor).coords


def arch_partition(d: BlockSet) -> List[BlockSet]:
    """Subsets whose difference sets each lie in one Archimedean class."""
    if d.is_empty():
        return []
    done: List[BlockSet] = []
    work = [d]
    for _ in range(MAX_PARTITION_ROUNDS):
        if not work:
            return sorted(done, key=_order_key)
        e = work.pop()
        try:
            classes = calculus_funcs.arch_classes(e)
        except errors.TooSmall:
            done.append(e)
            continue
        if len(classes) == 1:
            done.append(e)
            continue
        top, rest = _split_by_top_class(e)
        if top.is_empty() or rest.is_empty():
            raise errors.NotDecomposable(
                "Peeling the top Archimedean class made no progress."
            )
        log.debug(f"peeled the class of leading index {classes[0].leading}")
        work.extend([rest, top])
    raise errors.NotDecomposable("The Archimedean partition did not settle.")


# P_σ and σ-intervals
def p_sigma(d: BlockSet, sigma: Sequence[GroupElement]) -> BlockSet:
    sigma = tuple(sigma)
    if not sigma:
        raise errors.ValidationError("P_σ needs a nonempty word.")
    try:
        alphabet = set(calculus_funcs.diff_set(d))
    except errors.TooSmall:
        alphabet = set()
    stray = [format_element(x) for x in sigma if x not in alphabet]
    if stray:
        raise errors.AlphabetMismatch(
            f"{', '.join(stray)} are not differences of the set."
        )
    return calculus_funcs.select(
        d, lambda v: v.forward[: len(sigma)] == sigma, len(sigma)
    )


def _conjugate(a: Word, b: Word) -> bool:
    return is_rotation(primitive_root(a), primitive_root(b))


def sigma_interval_cover(
    d: BlockSet,
) -> Tuple[List[SigmaInterval], List[GroupElement]]:
    """σ-intervals covering all but finitely many points of d.

    Consecutive rays whose periods are conjugate words join one interval.
    """
    if not d.is_finite():
        if len(calculus_funcs.arch_classes(d)) > 1:
            raise errors.NotUniformized(
                "The differences span several Archimedean classes; split "
                "the set with archsplit first."
            )
    intervals: List[SigmaInterval] = []
    leftover: List[GroupElement] = []
    group: List[Tuple[ChainComponent, ChainPart]] = []

    def close() -> None:
        if group:
            intervals.append(_interval(d, group))
            group.clear()

    for index, chain in enumerate(calculus_funcs.chain_partition(d)):
        for part in chain_parts(d, index, chain):
            if part.kind == "finite":
                close()
                leftover.extend(part.points)
                continue
            if group:
                prev = group[-1][1]
                joins = (
                    prev.kind in ("right", "line")
                    and part.kind in ("left", "line")
                    and _conjugate(prev.tau, part.tau)
                )
                if not joins:
                    close()
            group.append((chain, part))
    close()
    log.debug(f"{len(intervals)} σ-intervals, {len(leftover)} leftover")
    return intervals, leftover


def _interval(d: BlockSet, group) -> SigmaInterval:
    blocks = []
    for chain, part in group:
        blocks.extend(part_members(d, chain, part).blocks)
    members = validate(blocks, d.rank)
    mu = lcm(*(len(part.tau) for _, part in group))
    first, last = group[0][1], group[-1][1]
    if first.kind == "right":
        left, left_kind = first.lo, ELEMENT
    else:
        left, left_kind = None, CUT
    if last.kind == "left":
        right, right_kind = last.hi, ELEMENT
    elif group[-1][0].last == len(d.blocks) - 1:
        right, right_kind = None, INFINITY
    else:
        right, right_kind = None, CUT
    tau = primitive_root(first.tau)
    sigma = tau * (mu // len(tau))
    return SigmaInterval(
        members,
        sigma,
        mu,
        left,
        left_kind,
        right,
        right_kind,
        [(part.chain, part.kind) for _, part in group],
    )


# Pseudo-arithmetic decomposition
def _phase_predicate(tau: Word, i: int):
    """Elements a whose i-th successor starts a copy of τ."""
    n = len(tau)
    back = n - i

    def pred(view) -> bool:
        if view.forward[i : i + n] == tau:
            return True
        if len(view.backward) < back or len(view.forward) < i:
            return False
        before = tuple(reversed(view.backward[:back]))
        return before == tau[:back] and view.forward[:i] == tau[back:]

    return pred


def interval_pieces(
    interval: SigmaInterval, position: int
) -> Tuple[List[Piece], List[GroupElement]]:
    tau = primitive_generator(interval.sigma)
    pieces, points = [], []
    for i in range(len(tau)):
        e = calculus_funcs.select(
            interval.members, _phase_predicate(tau, i), 2 * len(tau)
        )
        if e.is_empty():
            continue
        if e.is_finite() and e.size() == 1:
            points.extend(e.points())
            continue
        eta = is_pseudo_arithmetic(e)
        if eta is None:
            raise errors.NotDecomposable(
                f"Phase {i} of the σ-interval {interval.describe()} is not "
                "pseudo-arithmetic."
            )
        pieces.append(Piece(e, eta, position, i))
    return pieces, points


@timed(log)
def pseudo_arith_decomp(d: BlockSet) -> Decomposition:
    """Pseudo-arithmetic pieces and finitely many points whose union is d."""
    pieces: List[Piece] = []
    points: List[GroupElement] = []
    intervals: List[SigmaInterval] = []

    def refine(e: BlockSet, depth: int) -> None:
        if depth > MAX_PARTITION_ROUNDS:
            raise errors.NotDecomposable("The decomposition did not settle.")
        for u, _ in uniformize(e):
            if u.is_finite():
                points.extend(u.points())
                continue
            parts = arch_partition(u)
            if len(parts) > 1:
                for part in parts:
                    refine(part, depth + 1)
                continue
            found, leftover = sigma_interval_cover(u)
            points.extend(leftover)
            for interval in found:
                made, single = interval_pieces(interval, len(intervals))
                intervals.append(interval)
                pieces.extend(made)
                points.extend(single)

    if not d.is_empty():
        refine(d, 0)
    pieces.sort(key=lambda p: _order_key(p.members))
    log.debug(f"{len(pieces)} pieces and {len(points)} points")
    return Decomposition(pieces, sorted(set(points)), intervals)


# Initial segments
def _ends(e: BlockSet) -> Tuple[Optional[GroupElement], ...]:
    low = high = None
    if e.blocks[0].indices.bounded_below():
        low = e.min_element()
    if e.blocks[-1].indices.bounded_above():
        high = e.max_element()
    return low, high


def same_progression(a: BlockSet, b: BlockSet, eta: GroupElement) -> bool:
    """Exact equality of two chains whose successive elements differ by η.

    Such a chain is fixed by its ends, or by its coset mod η when it has
    neither end.
    """
    if a.is_empty() or b.is_empty():
        return a.is_empty() and b.is_empty()
    ends = _ends(a)
    if ends != _ends(b):
        return False
    if ends != (None, None):
        return True
    x = a.blocks[0].element(a.blocks[0].any_index())
    y = b.blocks[0].element(b.blocks[0].any_index())
    q = floor_div(x - y, eta)
    return q is not None and eta * q == x - y


def _chain_prefix(
    x: BlockSet,
    cx: ChainComponent,
    y: BlockSet,
    cy: ChainComponent,
    eta: GroupElement,
) -> bool:
    """Whether chain cx of x is an initial part of chain cy of y."""
    mine = chain_members(x, cx)
    if not cx.right_bounded:
        return same_progression(mine, chain_members(y, cy), eta)
    top = mine.max_element()
    if y.locate(top) is None:
        return False
    pos = calculus_funcs.position_of(y, top)[0]
    if not cy.contains_position(pos):
        return False
    return same_progression(mine, restrict(y, cy, hi=top), eta)


def _is_initial_segment(
    x: BlockSet, y: BlockSet, eta: GroupElement
) -> bool:
    cx = calculus_funcs.chain_partition(x)
    cy = calculus_funcs.chain_partition(y)
    if len(cx) > len(cy):
        return False
    for a, b in zip(cx[:-1], cy):
        if not same_progression(
            chain_members(x, a), chain_members(y, b), eta
        ):
            return False
    return _chain_prefix(x, cx[-1], y, cy[len(cx) - 1], eta)


def initial_segment_check(e0: BlockSet, e1: BlockSet) -> str:
    etas = []
    for name, e in (("E0", e0), ("E1", e1)):
        eta = is_pseudo_arithmetic(e)
        if eta is None:
            raise errors.NotPseudoArithmetic(
                f"{name} does not have exactly one difference."
            )
        etas.append(eta)
    if etas[0] != etas[1]:
        raise errors.DifferentEta(
            f"E0 steps by {format_element(etas[0])} but E1 steps by "
            f"{format_element(etas[1])}."
        )
    zero = etas[0] - etas[0]
    for name, e in (("E0", e0), ("E1", e1)):
        first = e.blocks[0].indices
        if not first.bounded_below() or e.min_element() != zero:
            raise errors.DifferentMin(f"{name} does not start at 0.")

    forward = _is_initial_segment(e0, e1, etas[0])
    backward = _is_initial_segment(e1, e0, etas[0])
    if forward and backward:
        return EQUAL
    if forward:
        return E0_PREFIX
    if backward:
        return E1_PREFIX
    raise errors.VerificationFailed(
        "Neither set is an initial segment of the other.",
        {"E0": repr(list(e0.blocks)), "E1": repr(list(e1.blocks))},
    )


# Reports
def _set_entry(e: BlockSet) -> Dict:
    entry = {
        "set": database.blockset_to_json(e),
        "window": [
            format_element(x) for x in sorted(setrep_funcs.sample(e, 4))
        ],
    }
    if e.is_finite():
        entry["size"] = e.size()
    return entry


def _sigma_entry(
    index: int, chain: ChainComponent, sigma: Sequence[GroupElement]
) -> Dict:
    left, right = sigma_witnesses(chain, sigma)
    return {
        "chain": index,
        "kinds": sigma_kinds(chain, sigma),
        "left": format_element(left) if left is not None else None,
        "right": format_element(right) if right is not None else None,
    }


def _period_entry(word: DifferenceWord, bound: int) -> Dict:
    found = detect_period(word, bound)
    return {
        "period": found.period,
        "offset": found.offset,
        "k": found.k,
        "counts": {str(j): c for j, c in sorted(found.counts.items())},
    }


def period_report(d: BlockSet, bound: int) -> Dict:
    chains = []
    for index, chain in enumerate(calculus_funcs.chain_partition(d)):
        word = calculus_funcs.chain_word(chain)
        entry = {"chain": index, "kind": classify_chain(chain)}
        if word.right_infinite:
            entry["right"] = _period_entry(word, bound)
        if word.left_infinite:
            entry["left"] = _period_entry(word.reversed(), bound)
        chains.append(entry)
    return {"chains": chains, "bound": bound}


def psigma_report(d: BlockSet, sigma: Sequence[GroupElement]) -> Dict:
    entry = _set_entry(p_sigma(d, sigma))
    entry["sigma"] = format_word(sigma)
    entry["generator"] = format_word(primitive_generator(sigma))
    entry["chains"] = [
        _sigma_entry(index, chain, sigma)
        for index, chain in enumerate(calculus_funcs.chain_partition(d))
    ]
    return entry


def uniformize_report(d: BlockSet) -> Dict:
    pieces = []
    for members, n in uniformize(d):
        entry = _set_entry(members)
        entry["N"] = n
        pieces.append(entry)
    return {"pieces": pieces}


def archsplit_report(d: BlockSet) -> Dict:
    pieces = []
    for part in arch_partition(d):
        entry = _set_entry(part)
        try:
            classes = calculus_funcs.arch_classes(part)
        except errors.TooSmall:
            classes = []
        entry["classes"] = [c.leading for c in classes]
        pieces.append(entry)
    return {"pieces": pieces}


def _interval_entry(interval: SigmaInterval) -> Dict:
    def end(value, kind):
        return format_element(value) if value is not None else kind

    return {
        "sigma": format_word(interval.sigma),
        "generator": format_word(primitive_generator(interval.sigma)),
        "mu": interval.mu,
        "left": end(interval.left, interval.left_kind),
        "right": end(interval.right, interval.right_kind),
        "chains": [list(w) for w in interval.witnesses],
    }


def decompose_report(d: BlockSet) -> Dict:
    decomposition = pseudo_arith_decomp(d)
    pieces = []
    for piece in decomposition.pieces:
        entry = _set_entry(piece.members)
        entry.update(
            {
                "eta": format_element(piece.eta),
                "interval": piece.interval,
                "phase": piece.phase,
            }
        )
        pieces.append(entry)
    return {
        "pieces": pieces,
        "points": [format_element(x) for x in decomposition.points],
        "certificates": {
            "N": is_uniformized(d),
            "mu": [i.mu for i in decomposition.intervals],
            "generators": [
                format_word(primitive_generator(i.sigma))
                for i in decomposition.intervals
            ],
            "intervals": [_interval_entry(i) for i in decomposition.intervals],
        },
    }
