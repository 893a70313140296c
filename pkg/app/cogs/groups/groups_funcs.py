import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ... import errors
from ...classes import formula as fm
from ...classes.block_set import Block, BlockSet, validate
from ...classes.group import IntegerLikeGroup
from ...classes.index_set import IndexSet
from ...classes.lexgroup import GroupElement, format_element
from ...utils import frac_gcd, lcm, timed
from ..calculus import calculus_funcs
from ..setrep import setrep_funcs
from ..structure import structure_funcs

log = logging.getLogger("OAG#Groups")


# Groups
def floor_g(g: IntegerLikeGroup, a: GroupElement) -> GroupElement:
    return g.floor(a)


def frac_g(g: IntegerLikeGroup, a: GroupElement) -> GroupElement:
    return g.frac(a)


def _eta(piece: BlockSet) -> GroupElement:
    eta = structure_funcs.is_pseudo_arithmetic(piece)
    if eta is None:
        raise errors.NotPseudoArithmetic(
            "Every piece needs exactly one difference to build a group."
        )
    return eta


def normalize(piece: BlockSet) -> BlockSet:
    """Translate a piece so that it starts at 0.

    A piece without a least element is reflected first when it has a
    greatest one, and translated by any of its elements when it has
    neither.
    """
    first, last = piece.blocks[0], piece.blocks[-1]
    if first.indices.bounded_below():
        return piece.translate(-piece.min_element())
    if last.indices.bounded_above():
        flipped = piece.reflect()
        return flipped.translate(-flipped.min_element())
    return piece.translate(-first.element(first.any_index()))


def _block_in_group(block: Block, g: IntegerLikeGroup) -> bool:
    k = block.indices
    span = lcm(k.period, block.length)
    checked = list(k.middle)
    if not k.bounded_above():
        checked.extend(
            j for j in range(k.hi + 1, k.hi + 1 + span) if j in k
        )
    if not k.bounded_below():
        checked.extend(j for j in range(k.lo - span, k.lo) if j in k)
    if not k.is_finite() and not g.contains(block.total):
        return False
    return all(g.contains(block.element(j)) for j in checked)


def contains_set(g: IntegerLikeGroup, d: BlockSet) -> bool:
    """Exact containment: members repeat modulo the block period."""
    return all(_block_in_group(b, g) for b in d.blocks)


@timed(log)
def build_group(pieces: Sequence[BlockSet]) -> IntegerLikeGroup:
    if not pieces:
        raise errors.ValidationError("A group needs at least one piece.")
    etas = [_eta(p) for p in pieces]
    leads = {eta.leading() for eta in etas}
    if len(leads) > 1:
        shown = ", ".join(format_element(eta) for eta in etas)
        raise errors.IncompatibleEtas(
            f"The steps {shown} lie in different Archimedean classes."
        )
    lead = leads.pop()
    g = IntegerLikeGroup(
        etas[0].rank, lead, frac_gcd(eta.coords[lead] for eta in etas)
    )
    for i, piece in enumerate(pieces):
        if not contains_set(g, normalize(piece)):
            raise errors.NotNormalized(
                f"Piece {i} does not fit in {g.describe()} after moving it "
                "to start at 0."
            )
    log.debug(f"built {g.describe()} from {len(pieces)} pieces")
    return g


def integer_like_check(
    g: IntegerLikeGroup, samples: int, seed: int = 0
) -> Dict[str, List[str]]:
    rng = random.Random(seed)
    report: Dict[str, List[str]] = {"errors": [], "warns": []}
    eta = g.eta

    def point() -> GroupElement:
        return GroupElement(
            Fraction(rng.randint(-60, 60), rng.randint(1, 6))
            for _ in range(g.rank)
        )

    def member() -> GroupElement:
        return g.floor(point())

    for _ in range(samples):
        a = point()
        b = g.floor(a)
        if not g.contains(b):
            report["errors"].append(f"floor({a}) = {b} is not in G.")
        if not b <= a < b + eta:
            report["errors"].append(f"floor({a}) = {b} does not sandwich.")
        for other in (b - eta, b + eta):
            if other <= a < other + eta:
                report["errors"].append(f"floor({a}) is not unique.")
        x, y = member(), member()
        if not (g.contains(x + y) and g.contains(x - y)):
            report["errors"].append(f"G is not closed on {x}, {y}.")
        if x.sign() > 0 and x < eta:
            report["errors"].append(f"{x} is a positive element below η.")
    log.debug(f"integer-like check: {len(report['errors'])} failures")
    return report


def groupish_check(
    e: BlockSet, samples: int, seed: int = 0
) -> Dict[str, List[str]]:
    """Sums and differences of a pseudo-arithmetic set starting at 0."""
    report: Dict[str, List[str]] = {"errors": [], "warns": []}
    _eta(e)
    zero = e.blocks[0].base - e.blocks[0].base
    if not e.blocks[0].indices.bounded_below() or e.min_element() != zero:
        raise errors.DifferentMin("The set does not start at 0.")
    window = e.first_elements(max(samples, 2))
    if len(window) < samples:
        report["warns"].append(
            f"Only {len(window)} elements were available to sample."
        )
    rng = random.Random(seed)
    top = window[-1]
    for _ in range(samples):
        a, b = sorted(rng.choice(window) for _ in range(2))
        if b - a not in e:
            report["errors"].append(f"{b} − {a} is missing.")
        if a + b <= top and a + b not in e:
            report["errors"].append(f"{a} + {b} is missing.")
    return report


# Formulas
def _chain_clause(
    d: BlockSet, chain, g: IntegerLikeGroup, eta: GroupElement
) -> fm.FloorFormula:
    x = fm.Var()
    members = structure_funcs.chain_members(d, chain)
    first = chain.blocks[0]
    anchor = first.element(first.any_index())
    multiple = eta.coords[g.lead] / g.step
    step_clause = fm.InG(
        fm.Scale(1 / multiple, fm.Sub(x, fm.Param(anchor)))
    )
    bounds = []
    if chain.left_bounded:
        bounds.append(fm.Compare("le", fm.Param(members.min_element()), x))
    elif g.lead > 0:
        bounds.append(fm.Compare("lt", fm.Cut(g.lead, anchor, False), x))
    if chain.right_bounded:
        bounds.append(fm.Compare("le", x, fm.Param(members.max_element())))
    elif g.lead > 0:
        bounds.append(fm.Compare("lt", x, fm.Cut(g.lead, anchor, True)))
    return fm.conjunction(step_clause, *bounds)


def piece_formula(
    piece: BlockSet, g: IntegerLikeGroup
) -> fm.FloorFormula:
    eta = _eta(piece)
    return fm.disjunction(
        _chain_clause(piece, chain, g, eta)
        for chain in calculus_funcs.chain_partition(piece)
    )


@timed(log)
def emit_formula(
    d: BlockSet, g: Optional[IntegerLikeGroup] = None
) -> Tuple[fm.FloorFormula, IntegerLikeGroup]:
    """A quantifier-free formula over ⟨R; +, <, G⟩ defining d.

    A chain with no end on one side is bounded on that side by its
    galaxy instead, and a galaxy edge is not an element that a parameter
    can name. Such bounds are written as `Cut` terms: comparisons with
    the supremum or infimum of the elements that agree with an anchor on
    the first `g.lead` coordinates. They are sound for `eval_formula` but
    sit outside the plain ⟨R; +, <, G⟩ signature, and nothing floors
    them. Chains at the top coordinate (`g.lead` = 0) need no cut.
    """
    decomposition = structure_funcs.pseudo_arith_decomp(d)
    members = [p.members for p in decomposition.pieces]
    if g is None:
        g = build_group(members) if members else unit_group(d.rank)
    x = fm.Var()
    clauses = [piece_formula(p, g) for p in members]
    clauses.extend(
        fm.Compare("eq", x, fm.Param(p)) for p in decomposition.points
    )
    phi = fm.disjunction(clauses)
    log.debug(f"formula with {len(clauses)} clauses")
    return phi, g


def eval_formula(
    phi: fm.FloorFormula, x: GroupElement, g: IntegerLikeGroup
) -> bool:
    return fm.evaluate(phi, x, g)


def split_at(d: BlockSet, a: GroupElement) -> Tuple[BlockSet, BlockSet]:
    """(elements below a, elements at or above a)."""
    lower, upper = [], []
    for block in d.blocks:
        try:
            j = block.first_index_at_least(a)
        except errors.UnboundedBelow:
            upper.append(block)
            continue
        if j is None:
            lower.append(block)
            continue
        k = block.indices
        upper.append(block.with_indices(k & IndexSet.interval(j, None)))
        lower.append(block.with_indices(k & IndexSet.interval(None, j - 1)))
    return validate(lower, d.rank), validate(upper, d.rank)


def _halves(piece: BlockSet) -> List[BlockSet]:
    first, last = piece.blocks[0], piece.blocks[-1]
    if first.indices.bounded_below() or last.indices.bounded_above():
        return [piece]
    lower, upper = split_at(piece, first.element(first.any_index()))
    return [half for half in (lower, upper) if not half.is_empty()]


def def_arith(d: BlockSet) -> Dict:
    """Every normalized piece as E* cut down to an initial segment."""
    decomposition = structure_funcs.pseudo_arith_decomp(d)
    pieces = [
        half for p in decomposition.pieces for half in _halves(p.members)
    ]
    if not pieces:
        return {"group": None, "star": None, "pieces": []}
    g = build_group(pieces)
    factors = [g.step / _eta(p).coords[g.lead] for p in pieces]
    scaled = [normalize(p).scale(q) for p, q in zip(pieces, factors)]
    star = None
    for i, candidate in enumerate(scaled):
        try:
            relations = [
                structure_funcs.initial_segment_check(e, candidate)
                for e in scaled
            ]
        except errors.VerificationFailed:
            continue
        if structure_funcs.E1_PREFIX not in relations:
            star = i
            break
    if star is None:
        raise errors.NotDecomposable(
            "No normalized piece extends all the others."
        )
    entries = []
    for p, e, q, relation in zip(pieces, scaled, factors, relations):
        entry = {
            "eta": format_element(_eta(p)),
            "scale": str(q),
            "relation": relation,
        }
        if e.is_finite():
            entry["size"] = e.size()
        entries.append(entry)
    log.debug(f"E* is piece {star} of {len(pieces)}")
    return {"group": g.to_json(), "star": star, "pieces": entries}


def unit_group(rank: int) -> IntegerLikeGroup:
    """Q^(r-1) × Z, the group of the last coordinate."""
    return IntegerLikeGroup(rank, rank - 1, 1)


# Reports
def formula_check(
    phi: fm.FloorFormula,
    g: IntegerLikeGroup,
    d: BlockSet,
    samples: int,
    seed: int = 0,
) -> Dict[str, List[str]]:
    """Compare φ with membership on members, midpoints and random points."""
    report: Dict[str, List[str]] = {"errors": [], "warns": []}
    members = sorted(setrep_funcs.sample(d, max(samples // 4, 1)))
    for a in members:
        if not fm.evaluate(phi, a, g):
            report["errors"].append(f"φ rejects the member {a}.")
        try:
            b = calculus_funcs.successor(d, a)
        except errors.IsMaximal:
            continue
        mid = (a + b) * Fraction(1, 2)
        if fm.evaluate(phi, mid, g):
            report["errors"].append(f"φ accepts {mid}, between {a} and {b}.")
    rng = random.Random(seed)
    for _ in range(samples):
        x = GroupElement(
            Fraction(rng.randint(-40, 40), rng.randint(1, 4))
            for _ in range(d.rank)
        )
        if fm.evaluate(phi, x, g) != (x in d):
            report["errors"].append(f"φ and the set disagree at {x}.")
    return report


def defing_report(d: BlockSet, samples: int, seed: int = 0) -> Dict:
    phi, g = emit_formula(d)
    check = formula_check(phi, g, d, samples, seed)
    report = {
        "formula": phi.sexpr(),
        "group": g.to_json(),
        "describe": g.describe(),
        "check": check,
    }
    try:
        report["arith"] = def_arith(d)
    except errors.OAGError as e:
        check["warns"].append(f"No E* certificate: {e}")
    if check["errors"]:
        raise errors.VerificationFailed(
            f"The formula failed {len(check['errors'])} of its checks.",
            report,
        )
    return report
