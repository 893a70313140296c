import itertools
import logging
import multiprocessing
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ... import errors
from ...classes.block_set import Block, BlockSet, validate
from ...classes.index_set import IndexSet
from ...classes.inp_pattern import (
    DISTANCE,
    POSITION,
    InpPatternInstance,
    InterlacedFamily,
    Path,
    Row,
)
from ...classes.lexgroup import GroupElement, floor_div, format_element, unit
from ...database import database
from ..calculus import calculus_funcs

log = logging.getLogger("OAG#Witness")

SPOT_PAIRS = 20
SPOT_INNER = 10
RANDOM_PATHS = 200
FULL_PATH_COLUMNS = 4


# Bounds
def all_below(d: BlockSet, c: GroupElement) -> bool:
    """Whether every element of d is < c."""
    last = d.blocks[-1]
    if last.indices.bounded_above():
        return d.max_element() < c
    gap = c - last.base
    return gap.sign() > 0 and floor_div(gap, last.total) is None


def all_above(d: BlockSet, c: GroupElement) -> bool:
    first = d.blocks[0]
    if first.indices.bounded_below():
        return d.min_element() > c
    gap = first.base - c
    return gap.sign() > 0 and floor_div(gap, first.total) is None


def window(d: BlockSet, count: int) -> List[GroupElement]:
    """count successive elements, from the least one when there is one."""
    first = d.blocks[0]
    return d.enumerate_window(first.element(first.any_index()), count)


def _total(items: Sequence[GroupElement], zero: GroupElement):
    result = zero
    for x in items:
        result = result + x
    return result


# Interlaced families
def standard_family(rank: int, levels: int) -> List[BlockSet]:
    """D_0, …, D_levels with D_i = {k·e_i : k ≥ 1}.

    Each D_(i+1) sits below the least step of D_i, so it has to live in a
    smaller Archimedean class: n levels need rank n + 1.
    """
    if levels < 1:
        raise errors.ValidationError(f"--levels must be positive: {levels}")
    if levels + 1 > rank:
        raise errors.ValidationError(
            f"The standard family of {levels} levels needs a rank of at "
            f"least {levels + 1}, not {rank}."
        )
    family = []
    for i in range(levels + 1):
        e = unit(rank, i)
        family.append(validate([Block(e, [e], IndexSet.naturals())], rank))
    return family


def build_interlaced(
    ds: Sequence[BlockSet],
) -> Tuple[InterlacedFamily, Dict]:
    if not ds:
        raise errors.ValidationError("An interlaced family needs a set.")
    for i, d in enumerate(ds, 1):
        if d.is_empty() or d.is_finite():
            raise errors.HypothesisFailed(
                f"D_{i} must be infinite.", max(i - 1, 1)
            )
    zero = ds[0].blocks[0].base - ds[0].blocks[0].base
    for i, (d, e) in enumerate(zip(ds, ds[1:]), 1):
        if not all_above(e, zero):
            raise errors.HypothesisFailed(
                f"D_{i + 1} has elements that are not positive.", i
            )
        least = calculus_funcs.diff_set(d)[0]
        if not all_below(e, least):
            raise errors.HypothesisFailed(
                f"D_{i + 1} reaches {format_element(least)}, the least "
                f"difference of D_{i}.",
                i,
            )
    levels = [ds[0]] + [
        d.scale(Fraction(1, 2 ** i)) for i, d in enumerate(ds[1:], 1)
    ]
    family = InterlacedFamily(ds, levels)
    report = {"errors": [], "warns": [], "levels": []}
    for i in range(1, len(ds)):
        report["levels"].append(_level_report(family, i))
    for entry in report["levels"]:
        report["errors"].extend(entry["errors"])
    log.debug(f"interlaced family of {len(ds)} levels")
    return family, report


def _level_report(family: InterlacedFamily, i: int) -> Dict:
    """Spot checks between E_i and E_(i+1) (levels counted from 1)."""
    outer = family.levels[i - 1]
    inner = family.levels[i]
    errors_: List[str] = []
    points = window(outer, SPOT_PAIRS + 1)
    steps = [b - a for a, b in zip(points, points[1:])]
    tips = window(inner, SPOT_INNER)
    for gap in steps:
        inside = sum(1 for y in tips if y < gap)
        if inside < SPOT_INNER:
            errors_.append(
                f"Only {inside} points of E_{i + 1} fit in a gap "
                f"{format_element(gap)} of E_{i}."
            )
    # D_(i+1) < 2^(i-1)·E_i′ on the sampled gaps.
    scale = Fraction(2 ** (i - 1))
    bound = min(steps) * scale if steps else None
    if bound is not None and not all_below(family.sets[i], bound):
        errors_.append(
            f"D_{i + 1} is not below {format_element(bound)}, a scaled "
            f"gap of E_{i}."
        )
    return {
        "level": i,
        "infinite": not inner.is_finite(),
        "pairs": len(steps),
        "errors": errors_,
    }


# Patterns
def _half_open(lo: GroupElement, width: GroupElement):
    return lo, lo + width


def build_inp_pattern(
    family: InterlacedFamily, columns: int, dense: bool, seed: int = 0
) -> InpPatternInstance:
    if columns < 1:
        raise errors.ValidationError(
            f"A pattern needs at least one column, not {columns}."
        )
    levels = family.levels
    for i, level in enumerate(levels):
        if level.is_empty() or level.is_finite():
            raise errors.TooFewElements(
                f"Level {i} is finite, so it cannot feed {columns} columns "
                "forever."
            )
    gaps = [calculus_funcs.diff_set(level)[0] for level in levels]
    picks = [window(level, columns) for level in levels]
    zero = gaps[0] - gaps[0]

    rows = [
        Row(POSITION, None, [_half_open(e, gaps[0]) for e in picks[0]])
    ]
    for i in range(len(levels) - 1):
        rows.append(
            Row(
                DISTANCE,
                i,
                [_half_open(f, gaps[i + 1]) for f in picks[i + 1]],
            )
        )
    extras = [zero] * columns
    if dense:
        g = gaps[-1]
        extras = [g * Fraction(j + 1, columns + 2) for j in range(columns)]
        rows.append(
            Row(
                DISTANCE,
                len(levels) - 1,
                [_half_open(x, g * Fraction(1, columns + 2)) for x in extras],
            )
        )

    if columns <= FULL_PATH_COLUMNS:
        choices = list(itertools.product(range(columns), repeat=len(rows)))
    else:
        rng = random.Random(seed)
        choices = [
            tuple(rng.randrange(columns) for _ in rows)
            for _ in range(RANDOM_PATHS)
        ]
    paths = []
    for choice in choices:
        digits = [picks[j][choice[j]] for j in range(len(levels))]
        extra = extras[choice[-1]] if dense else zero
        realizer = _total(digits, zero) + extra
        paths.append(Path(choice, digits, extra, realizer))
    log.debug(f"{len(rows)} rows and {len(paths)} paths")
    return InpPatternInstance(levels, rows, paths, columns, dense)


def verify_instance(p: InpPatternInstance, jobs: int = 1) -> Dict:
    report: Dict = {"errors": [], "warns": []}
    for r, row in enumerate(p.rows):
        ordered = sorted(row.intervals, key=lambda j: j[0])
        for lo, hi in ordered:
            if not lo < hi:
                report["errors"].append(f"Row {r} has an empty interval.")
        for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
            if lo < hi:
                report["errors"].append(
                    f"Row {r} has overlapping intervals at "
                    f"{format_element(lo)}."
                )
        if row.kind == POSITION and p.levels:
            for lo, hi in row.intervals:
                if not _lone_point(p.levels[0], lo, hi):
                    report["errors"].append(
                        f"Row {r} interval at {format_element(lo)} does not "
                        "hold exactly one point of level 0."
                    )

    gaps = []
    for level in p.levels:
        try:
            gaps.append(calculus_funcs.diff_set(level)[0])
        except errors.TooSmall:
            gaps.append(None)
    tasks = [(p, path, gaps, n) for n, path in enumerate(p.paths)]
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(jobs) as pool:
            found = pool.starmap(_check_path, tasks)
    else:
        found = [_check_path(*task) for task in tasks]
    for problems in found:
        report["errors"].extend(problems)

    if p.rows and p.columns and p.columns <= FULL_PATH_COLUMNS:
        expected = p.columns ** len(p.rows)
        seen = {path.columns for path in p.paths}
        if len(seen) < expected:
            report["errors"].append(
                f"Only {len(seen)} of the {expected} paths are realized."
            )
    log.debug(f"verified instance: {len(report['errors'])} failures")
    return report


def _lone_point(level: BlockSet, lo: GroupElement, hi: GroupElement) -> bool:
    if lo not in level:
        return False
    try:
        return calculus_funcs.successor(level, lo) >= hi
    except errors.IsMaximal:
        return True


def _check_path(p: InpPatternInstance, path: Path, gaps, n: int) -> List:
    problems = []
    if len(path.columns) != len(p.rows) or len(path.digits) != len(
        p.levels
    ):
        return [f"Path {n} does not match the shape of the pattern."]
    zero = path.extra - path.extra
    for j, (digit, level) in enumerate(zip(path.digits, p.levels)):
        if digit not in level:
            problems.append(f"Path {n}: digit {j} is not in its level.")
    x = _total(path.digits, zero) + path.extra
    if x != path.realizer:
        problems.append(f"Path {n}: the realizer is not the digit sum.")

    def tail(i: int) -> GroupElement:
        return _total(path.digits[i + 1 :], zero) + path.extra

    for r, (row, column) in enumerate(zip(p.rows, path.columns)):
        if row.kind == POSITION:
            value = x
        else:
            value = tail(row.level)
            gap = gaps[row.level]
            if gap is None or not zero < value < gap:
                problems.append(
                    f"Path {n}: the row {r} distance is not certified."
                )
        lo, hi = row.intervals[column]
        if not lo <= value < hi:
            problems.append(f"Path {n} misses row {r}, column {column}.")
    return problems


# Reports
def witness_report(
    ds: Sequence[BlockSet],
    columns: int,
    dense: bool = False,
    seed: int = 0,
    jobs: int = 1,
) -> Dict:
    family, interlaced = build_interlaced(ds)
    instance = build_inp_pattern(family, columns, dense, seed)
    check = verify_instance(instance, jobs)
    report = {
        "levels": len(family.levels) - 1,
        "rows": len(instance.rows),
        "paths": len(instance.paths),
        "columns": columns,
        "dense": dense,
        "interlaced": interlaced,
        "verify": check,
        "instance": database.instance_to_json(instance),
    }
    if interlaced["errors"] or check["errors"]:
        raise errors.VerificationFailed(
            f"The pattern failed {len(check['errors'])} path checks and "
            f"{len(interlaced['errors'])} interlacing checks.",
            {"interlaced": interlaced, "verify": check},
        )
    return report


def verify_report(p: InpPatternInstance, jobs: int = 1) -> Dict:
    check = verify_instance(p, jobs)
    if check["errors"]:
        raise errors.VerificationFailed(
            f"The instance failed {len(check['errors'])} checks.", check
        )
    return {"rows": len(p.rows), "paths": len(p.paths), "verify": check}
