"""Quantifier-free formulas in one variable over ⟨R; +, <, G⟩.

Terms are built from x, parameters, +, −, rational scaling and floor_G.
Galaxy cuts `(sup i c)` / `(inf i c)` stand for the supremum or infimum
of {y : y agrees with c on the first i coordinates}; they may only be
compared against terms.
"""
from fractions import Fraction
from typing import Tuple, Union

import attr

from .. import errors
from ..utils import fmt_fraction
from .group import IntegerLikeGroup
from .lexgroup import GroupElement


# Terms
@attr.s(frozen=True, slots=True)
class Var:
    def sexpr(self) -> str:
        return "x"


@attr.s(frozen=True, slots=True)
class Zero:
    def sexpr(self) -> str:
        return "0"


@attr.s(frozen=True, slots=True)
class Param:
    value: GroupElement = attr.ib()

    def sexpr(self) -> str:
        coords = " ".join(fmt_fraction(c) for c in self.value.coords)
        return f"(param {coords})"


@attr.s(frozen=True, slots=True)
class Cut:
    level: int = attr.ib()
    value: GroupElement = attr.ib()
    upper: bool = attr.ib()

    def sexpr(self) -> str:
        name = "sup" if self.upper else "inf"
        return f"({name} {self.level} {Param(self.value).sexpr()})"


@attr.s(frozen=True, slots=True)
class Add:
    left = attr.ib()
    right = attr.ib()

    def sexpr(self) -> str:
        return f"(add {self.left.sexpr()} {self.right.sexpr()})"


@attr.s(frozen=True, slots=True)
class Sub:
    left = attr.ib()
    right = attr.ib()

    def sexpr(self) -> str:
        return f"(sub {self.left.sexpr()} {self.right.sexpr()})"


@attr.s(frozen=True, slots=True)
class Scale:
    factor: Fraction = attr.ib(converter=Fraction)
    term = attr.ib()

    def sexpr(self) -> str:
        return f"(scale {fmt_fraction(self.factor)} {self.term.sexpr()})"


@attr.s(frozen=True, slots=True)
class Floor:
    term = attr.ib()

    def sexpr(self) -> str:
        return f"(floor {self.term.sexpr()})"


Term = Union[Var, Zero, Param, Cut, Add, Sub, Scale, Floor]


# Formulas
COMPARISONS = ("lt", "le", "eq")


@attr.s(frozen=True, slots=True)
class Compare:
    op: str = attr.ib(validator=attr.validators.in_(COMPARISONS))
    left = attr.ib()
    right = attr.ib()

    def sexpr(self) -> str:
        return f"({self.op} {self.left.sexpr()} {self.right.sexpr()})"


@attr.s(frozen=True, slots=True)
class InG:
    term = attr.ib()

    def sexpr(self) -> str:
        return f"(in-G {self.term.sexpr()})"


@attr.s(frozen=True, slots=True)
class And:
    items: Tuple = attr.ib(converter=tuple)

    def sexpr(self) -> str:
        return "(and " + " ".join(i.sexpr() for i in self.items) + ")"


@attr.s(frozen=True, slots=True)
class Or:
    items: Tuple = attr.ib(converter=tuple)

    def sexpr(self) -> str:
        return "(or " + " ".join(i.sexpr() for i in self.items) + ")"


@attr.s(frozen=True, slots=True)
class Not:
    item = attr.ib()

    def sexpr(self) -> str:
        return f"(not {self.item.sexpr()})"


@attr.s(frozen=True, slots=True)
class Truth:
    value: bool = attr.ib()

    def sexpr(self) -> str:
        return "true" if self.value else "false"


FloorFormula = Union[Compare, InG, And, Or, Not, Truth]


def conjunction(*items) -> FloorFormula:
    items = [i for i in items if i != Truth(True)]
    if not items:
        return Truth(True)
    return items[0] if len(items) == 1 else And(items)


def disjunction(items) -> FloorFormula:
    items = [i for i in items if i != Truth(False)]
    if not items:
        return Truth(False)
    return items[0] if len(items) == 1 else Or(items)


# Evaluation
def eval_term(t: Term, x: GroupElement, g: IntegerLikeGroup):
    if isinstance(t, Var):
        return x
    if isinstance(t, Zero):
        return x - x
    if isinstance(t, (Param, Cut)):
        if t.value.rank != x.rank:
            raise errors.RankMismatch(
                f"The parameter {t.value} does not have rank {x.rank}."
            )
        return t.value if isinstance(t, Param) else t
    if isinstance(t, Floor):
        return g.floor(_element(eval_term(t.term, x, g)))
    if isinstance(t, Scale):
        return _element(eval_term(t.term, x, g)) * t.factor
    left = _element(eval_term(t.left, x, g))
    right = _element(eval_term(t.right, x, g))
    return left + right if isinstance(t, Add) else left - right


def _element(value) -> GroupElement:
    if isinstance(value, Cut):
        raise errors.ValidationError(
            "A galaxy cut can only be compared, not used in arithmetic."
        )
    return value


def _cut_sign(x: GroupElement, cut: Cut) -> int:
    """Sign of x − cut; never zero."""
    mine, theirs = x.coords[: cut.level], cut.value.coords[: cut.level]
    if mine != theirs:
        return -1 if mine < theirs else 1
    return -1 if cut.upper else 1


def _sign(a, b) -> int:
    if isinstance(a, Cut) and isinstance(b, Cut):
        raise errors.ValidationError("Two galaxy cuts cannot be compared.")
    if isinstance(b, Cut):
        return _cut_sign(a, b)
    if isinstance(a, Cut):
        return -_cut_sign(b, a)
    return (a > b) - (a < b)


def evaluate(phi: FloorFormula, x: GroupElement, g: IntegerLikeGroup) -> bool:
    if x.rank != g.rank:
        raise errors.RankMismatch(
            f"{x} has rank {x.rank} but the group has rank {g.rank}."
        )
    if isinstance(phi, Truth):
        return phi.value
    if isinstance(phi, And):
        return all(evaluate(i, x, g) for i in phi.items)
    if isinstance(phi, Or):
        return any(evaluate(i, x, g) for i in phi.items)
    if isinstance(phi, Not):
        return not evaluate(phi.item, x, g)
    if isinstance(phi, InG):
        return g.contains(_element(eval_term(phi.term, x, g)))
    sign = _sign(eval_term(phi.left, x, g), eval_term(phi.right, x, g))
    if phi.op == "lt":
        return sign < 0
    if phi.op == "le":
        return sign <= 0
    return sign == 0
