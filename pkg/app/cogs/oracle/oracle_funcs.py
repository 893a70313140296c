"""Brute-force checks of the symbolic operations.

Every check walks the first n successive elements of a set and
recomputes the answer by hand, then compares it with the symbolic one.
"""
import logging
import multiprocessing
import random
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Set

from tqdm import tqdm

from ... import errors
from ...classes.block_set import BlockSet
from ...classes.lexgroup import GroupElement, format_element
from ...utils import chunks, lcm
from ..calculus import calculus_funcs
from ..structure import structure_funcs

log = logging.getLogger("OAG#Oracle")

OPS = ("diff", "successor", "gamma", "psigma", "decompose", "member")
EXACT, BOUNDARY, MISMATCH = "exact-match", "boundary-excluded", "mismatch"
PROGRESS_MIN = 5000


# Windows
def _span(d: BlockSet, i: int) -> int:
    block = d.blocks[i]
    return lcm(block.indices.period, block.length)


def brute_window(d: BlockSet, n: int) -> List[GroupElement]:
    """The first n successive elements, walking one index at a time.

    A set without a least element is entered two periods below the
    threshold of its first block. The walk stops where the next element
    has no predecessor.
    """
    out: List[GroupElement] = []
    for i, block in enumerate(d.blocks):
        k = block.indices
        if k.bounded_below():
            j = k.min_element()
        elif not out:
            j = k.prev_in(k.lo)
            for _ in range(2 * _span(d, i)):
                j = k.prev_in(j)
        else:
            break
        for index in k.enumerate(j, n - len(out)):
            out.append(block.element(index))
        if len(out) >= n or not k.bounded_above():
            break
    return out


def window_closes(d: BlockSet, window: Sequence[GroupElement]) -> bool:
    """Whether the window passes every threshold of every block."""
    if not window:
        return d.is_empty()
    seen = [0] * len(d.blocks)
    last = [None] * len(d.blocks)
    for x in window:
        found = d.locate(x)
        if found is None:
            return False
        seen[found[0]] += 1
        last[found[0]] = found[1]
    for i, block in enumerate(d.blocks):
        k = block.indices
        if k.is_finite():
            if seen[i] < k.size():
                return False
        elif k.bounded_above():
            if last[i] is None or last[i] < k.max_element():
                return False
        elif last[i] is None or last[i] < k.hi + 2 * _span(d, i):
            return False
    return True


def brute_diff(window: Sequence[GroupElement]) -> List[GroupElement]:
    return sorted({b - a for a, b in zip(window, window[1:])})


# Sharding
def _sharded(fn: Callable, items: List, jobs: int, *args) -> List:
    """fn(chunk, *args) over chunks, merged in window order."""
    if not items:
        return []
    if jobs <= 1:
        parts = [fn(items, *args)]
    else:
        tasks = [(c,) + args for c in chunks(items, jobs)]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.starmap(fn, tasks)
    return [entry for part in parts for entry in part]


def _progress(items: Sequence, desc: str):
    return tqdm(
        items,
        desc=desc,
        file=sys.stderr,
        leave=False,
        disable=len(items) < PROGRESS_MIN,
    )


# Reports
def _status(extra: Sequence, missing: Sequence, closed: bool) -> str:
    if extra or (missing and closed):
        return MISMATCH
    if missing:
        return BOUNDARY
    return EXACT


def _report(
    op: str,
    n: int,
    window: Sequence[GroupElement],
    closed: bool,
    extra: Sequence = (),
    missing: Sequence = (),
    checked: int = 0,
    failures: Sequence[str] = (),
) -> Dict:
    status = MISMATCH if failures else _status(extra, missing, closed)
    report = {
        "op": op,
        "window": n,
        "walked": len(window),
        "status": status,
        "inconclusive": not closed,
        "extra": [format_element(x) for x in extra],
        "missing": [format_element(x) for x in missing],
        "checked": checked,
        "failures": list(failures),
    }
    if not closed:
        report["note"] = "window inconclusive"
    return report


def oracle_diff(d: BlockSet, n: int) -> Dict:
    window = brute_window(d, n)
    try:
        symbolic = set(calculus_funcs.diff_set(d))
    except errors.TooSmall:
        symbolic = set()
    brute = set(brute_diff(window))
    return _report(
        "diff",
        n,
        window,
        window_closes(d, window),
        sorted(brute - symbolic),
        sorted(symbolic - brute),
        len(window),
    )


def _positions(window: Sequence, samples: int, seed: int) -> List[int]:
    candidates = list(range(len(window) - 1))
    if len(candidates) <= samples:
        return candidates
    return sorted(random.Random(seed).sample(candidates, samples))


def _successor_chunk(
    positions: List[int], d: BlockSet, window: Sequence, gamma: bool
) -> List[str]:
    failures = []
    for i in _progress(positions, "successor"):
        a, b = window[i], window[i + 1]
        try:
            if gamma:
                got, want = calculus_funcs.gamma(d, a), b - a
            else:
                got, want = calculus_funcs.successor(d, a), b
        except errors.OAGError as e:
            failures.append(f"{format_element(a)}: {e}")
            continue
        if got != want:
            failures.append(
                f"{format_element(a)}: symbolic {format_element(got)}, "
                f"walked {format_element(want)}"
            )
    return failures


def oracle_successor(
    d: BlockSet,
    n: int,
    samples: int,
    seed: int = 0,
    jobs: int = 1,
    gamma: bool = False,
) -> Dict:
    window = brute_window(d, n)
    positions = _positions(window, samples, seed)
    failures = _sharded(_successor_chunk, positions, jobs, d, window, gamma)
    return _report(
        "gamma" if gamma else "successor",
        n,
        window,
        window_closes(d, window),
        checked=len(positions),
        failures=failures,
    )


def _member_chunk(
    positions: List[int], d: BlockSet, window: Sequence
) -> List[str]:
    failures = []
    for i in _progress(positions, "member"):
        a = window[i]
        if a not in d:
            failures.append(f"{format_element(a)} was walked but is absent")
        if i + 1 < len(window):
            mid = (a + window[i + 1]) * Fraction(1, 2)
            if mid in d:
                failures.append(
                    f"{format_element(mid)} lies between successors but is "
                    "a member"
                )
    return failures


def oracle_member(
    d: BlockSet, n: int, samples: int, seed: int = 0, jobs: int = 1
) -> Dict:
    window = brute_window(d, n)
    positions = _positions(window, samples, seed)
    failures = _sharded(_member_chunk, positions, jobs, d, window)
    return _report(
        "member",
        n,
        window,
        window_closes(d, window),
        checked=len(positions),
        failures=failures,
    )


def oracle_psigma(d: BlockSet, sigma: Sequence[GroupElement], n: int) -> Dict:
    sigma = tuple(sigma)
    window = brute_window(d, n)
    symbolic = structure_funcs.p_sigma(d, sigma)
    m = len(sigma)
    steps = [b - a for a, b in zip(window, window[1:])]
    reach = len(window) - m
    brute: Set[GroupElement] = {
        window[i] for i in range(reach) if tuple(steps[i : i + m]) == sigma
    }
    picked = {window[i] for i in range(reach) if window[i] in symbolic}
    return _report(
        "psigma",
        n,
        window,
        window_closes(d, window),
        sorted(brute - picked),
        sorted(picked - brute),
        max(reach, 0),
    )


def _decompose_chunk(
    positions: List[int], pieces: Sequence[BlockSet], points: Set
) -> List[str]:
    failures = []
    for x in _progress(positions, "decompose"):
        owners = sum(1 for p in pieces if x in p) + (x in points)
        if owners != 1:
            failures.append(f"{format_element(x)} lies in {owners} pieces")
    return failures


def oracle_decompose(d: BlockSet, n: int, jobs: int = 1) -> Dict:
    window = brute_window(d, n)
    decomposition = structure_funcs.pseudo_arith_decomp(d)
    pieces = [p.members for p in decomposition.pieces]
    failures = _sharded(
        _decompose_chunk, list(window), jobs, pieces, set(decomposition.points)
    )
    for i, piece in enumerate(decomposition.pieces):
        walked = brute_window(piece.members, min(n, 64))
        steps = set(brute_diff(walked))
        if steps - {piece.eta}:
            failures.append(f"Piece {i} does not step by one η.")
        failures.extend(
            f"Piece {i} holds {format_element(x)}, which is not in the set"
            for x in walked
            if x not in d
        )
    return _report(
        "decompose",
        n,
        window,
        window_closes(d, window),
        checked=len(window),
        failures=failures,
    )


def run_oracle(
    op: str,
    d: BlockSet,
    n: int,
    samples: int = 100,
    seed: int = 0,
    jobs: int = 1,
    sigma: Optional[Sequence[GroupElement]] = None,
) -> Dict:
    if op not in OPS:
        raise errors.ValidationError(
            f"`{op}` has no oracle. Pick one of {', '.join(OPS)}."
        )
    if n < 2:
        raise errors.ValidationError(
            f"An oracle window needs at least 2 elements, not {n}."
        )
    log.debug(f"oracle {op} over {n} elements")
    if op == "diff":
        report = oracle_diff(d, n)
    elif op in ("successor", "gamma"):
        report = oracle_successor(d, n, samples, seed, jobs, op == "gamma")
    elif op == "member":
        report = oracle_member(d, n, samples, seed, jobs)
    elif op == "decompose":
        report = oracle_decompose(d, n, jobs)
    else:
        if not sigma:
            raise errors.ValidationError("The psigma oracle needs --sigma.")
        report = oracle_psigma(d, sigma, n)
    if report["status"] == MISMATCH:
        raise errors.VerificationFailed(
            f"The {op} oracle disagrees with the symbolic result.", report
        )
    return report
