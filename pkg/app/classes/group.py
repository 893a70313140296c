import math
from fractions import Fraction

import attr

from .. import errors
from .lexgroup import GroupElement, unit


@attr.s(frozen=True, slots=True)
class IntegerLikeGroup:
    """G = {x : x_j rational for j < lead, x_lead in step·Z, 0 below}.

    η = step·e_lead is the least positive element.
    """

    rank: int = attr.ib()
    lead: int = attr.ib()
    step: Fraction = attr.ib(converter=Fraction)

    @lead.validator
    def _check_lead(self, attribute, value):
        if not 0 <= value < self.rank:
            raise errors.InvalidGroup(
                f"The lead coordinate {value} is outside rank {self.rank}."
            )

    @step.validator
    def _check_step(self, attribute, value):
        if value <= 0:
            raise errors.InvalidGroup(
                f"The step of an integer-like group must be positive, not "
                f"{value}."
            )

    @property
    def eta(self) -> GroupElement:
        return unit(self.rank, self.lead) * self.step

    def _check_rank(self, x: GroupElement) -> None:
        if x.rank != self.rank:
            raise errors.RankMismatch(
                f"{x} has rank {x.rank} but the group has rank {self.rank}."
            )

    def contains(self, x: GroupElement) -> bool:
        self._check_rank(x)
        if any(c != 0 for c in x.coords[self.lead + 1 :]):
            return False
        return (x.coords[self.lead] / self.step).denominator == 1

    def __contains__(self, x: GroupElement) -> bool:
        return self.contains(x)

    def floor(self, a: GroupElement) -> GroupElement:
        """The unique b in G with b ≤ a < b + η."""
        self._check_rank(a)
        i = self.lead
        coords = list(a.coords[:i])
        coords.append(self.step * math.floor(a.coords[i] / self.step))
        coords.extend([0] * (self.rank - i - 1))
        b = GroupElement(coords)
        if b > a:
            b = b - self.eta
        return b

    def frac(self, a: GroupElement) -> GroupElement:
        return a - self.floor(a)

    def describe(self) -> str:
        free = "Q×" * self.lead
        zeros = "×0" * (self.rank - self.lead - 1)
        step = "Z" if self.step == 1 else f"({self.step})Z"
        return f"{free}{step}{zeros}"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "lead": self.lead,
            "step": str(self.step),
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntegerLikeGroup":
        try:
            return cls(
                int(data["rank"]), int(data["lead"]), Fraction(data["step"])
            )
        except (KeyError, TypeError, ValueError) as e:
            raise errors.ConversionError(
                f"I couldn't read a group from {data!r}: {e}"
            )
