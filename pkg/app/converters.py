import functools
from fractions import Fraction
from typing import Dict, List, Optional

import attr
import click
import pyparsing as pp

from . import errors
from .classes import formula as formula_ast
from .classes.index_set import IndexSet
from .classes.lexgroup import GroupElement

LPAR, RPAR, LBRACK, RBRACK, LBRACE, RBRACE, COMMA = map(
    pp.Suppress, "()[]{},"
)

INTEGER = pp.Regex(r"[+-]?\d+").setParseAction(lambda t: int(t[0]))
RATIONAL = pp.Regex(r"[+-]?\d+(\s*/\s*\d+)?").setParseAction(
    lambda t: Fraction(t[0].replace(" ", ""))
)
ELEMENT = pp.Group(LPAR + pp.delimitedList(RATIONAL) + RPAR).setParseAction(
    lambda t: GroupElement(t[0])
)
WORD = pp.Group(
    LBRACK + pp.Optional(pp.delimitedList(ELEMENT)) + RBRACK
).setParseAction(lambda t: [list(t[0])])


def _prog(tokens) -> IndexSet:
    residue, modulus = tokens[0], tokens[1]
    window = tokens[2] if len(tokens) > 2 else IndexSet.integers()
    return IndexSet.progression(residue, modulus) & window


def _call(name: str, *args: pp.ParserElement) -> pp.ParserElement:
    body = args[0]
    for arg in args[1:]:
        body = body + COMMA + arg
    return pp.Suppress(pp.Keyword(name)) + LPAR + body + RPAR


NAMED = (pp.Keyword("nat") | pp.Keyword("int") | pp.Keyword("empty"))
NAMED.setParseAction(
    lambda t: {
        "nat": IndexSet.naturals,
        "int": IndexSet.integers,
        "empty": IndexSet.empty,
    }[t[0]]()
)
WINDOW = (
    _call("range", INTEGER, INTEGER).setParseAction(
        lambda t: IndexSet.interval(t[0], t[1])
    )
    | _call("from", INTEGER).setParseAction(
        lambda t: IndexSet.interval(t[0], None)
    )
    | _call("upto", INTEGER).setParseAction(
        lambda t: IndexSet.interval(None, t[0])
    )
)
PROG = (
    pp.Suppress(pp.Keyword("prog"))
    + LPAR
    + INTEGER
    + COMMA
    + INTEGER
    + pp.Optional(COMMA + WINDOW)
    + RPAR
).setParseAction(_prog)
LISTED = (
    LBRACE + pp.Optional(pp.delimitedList(INTEGER)) + RBRACE
).setParseAction(lambda t: IndexSet.finite(list(t)))
_SIMPLE = NAMED | PROG | WINDOW | LISTED
JOIN = (
    pp.Suppress(pp.Keyword("join"))
    + LPAR
    + pp.delimitedList(_SIMPLE)
    + RPAR
).setParseAction(lambda t: functools.reduce(IndexSet.union, t))
INDICES = JOIN | _SIMPLE


def indices_text(k: IndexSet) -> str:
    """Concrete syntax that `indices` reads back to k."""
    if k == IndexSet.naturals():
        return "nat"
    if k == IndexSet.integers():
        return "int"
    if k.is_empty():
        return "empty"
    p = k.period

    def ray(r: int, window: str) -> str:
        return window if p == 1 else f"prog({r}, {p}, {window})"

    parts = [ray(r, f"upto({k.lo - 1})") for r in sorted(k.lo_residues)]
    if k.middle:
        parts.append("{" + ", ".join(map(str, k.middle)) + "}")
    parts.extend(
        ray(r, f"from({k.hi + 1})") for r in sorted(k.hi_residues)
    )
    return parts[0] if len(parts) == 1 else f"join({', '.join(parts)})"


def _parse(grammar: pp.ParserElement, arg: str, what: str, hint: str):
    try:
        return grammar.parseString(arg, parseAll=True)[0]
    except (pp.ParseException, pp.ParseFatalException) as e:
        raise errors.ConversionError(
            f"I couldn't interpret `{arg}` as {what}. "
            f"Please pass something like `{hint}`. ({e.msg}, column {e.col})"
        )
    except ZeroDivisionError:
        raise errors.ConversionError(
            f"`{arg}` divides by zero. Please pass something like `{hint}`."
        )


def myrational(arg: str) -> Fraction:
    return _parse(RATIONAL, arg, "a rational number", "3/4")


def myint(arg: str) -> int:
    return _parse(INTEGER, arg, "an integer (number)", "10")


def element(arg: str, rank: Optional[int] = None) -> GroupElement:
    arg = arg.strip()
    if rank == 1 and not arg.startswith("("):
        x = GroupElement([myrational(arg)])
    else:
        x = _parse(ELEMENT, arg, "a group element", "(0, 1/2)")
    if rank is not None and x.rank != rank:
        raise errors.RankMismatch(
            f"`{arg}` has {x.rank} coordinates but the session rank is "
            f"{rank}. Set OAG_RANK or pass {rank} coordinates."
        )
    return x


def word(arg: str, rank: Optional[int] = None) -> List[GroupElement]:
    letters = _parse(WORD, arg, "a word", "[(0, 1), (0, 2)]")
    for x in letters:
        if rank is not None and x.rank != rank:
            raise errors.RankMismatch(
                f"The letter {x} of `{arg}` does not have rank {rank}."
            )
    return letters


def indices(arg: str) -> IndexSet:
    return _parse(INDICES, arg, "an index set", "prog(0, 2, from(0))")


class _Converter(click.ParamType):
    def __init__(self, rank: Optional[int] = None) -> None:
        self.rank = rank

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return self.run(value)
        except errors.OAGError as e:
            self.fail(str(e), param, ctx)

    def run(self, value: str):
        raise NotImplementedError


class Rational(_Converter):
    name = "rational"

    def run(self, value: str) -> Fraction:
        return myrational(value)


class Element(_Converter):
    name = "element"

    def run(self, value: str) -> GroupElement:
        return element(value, self.rank)


class Word(_Converter):
    name = "word"

    def run(self, value: str) -> List[GroupElement]:
        return word(value, self.rank)


# Formulas
@attr.s(frozen=True, slots=True)
class _Named:
    name: str = attr.ib()


def _kw(name: str) -> pp.ParserElement:
    return pp.Suppress(pp.Keyword(name, identChars=pp.alphanums + "-_"))


_term = pp.Forward()
_formula = pp.Forward()
NAME = pp.Word(pp.alphas, pp.alphanums + "_")

VAR = pp.Keyword("x").setParseAction(lambda t: formula_ast.Var())
ZERO = pp.Regex(r"0(?![\d/])").setParseAction(lambda t: formula_ast.Zero())
PARAM = (
    LPAR
    + _kw("param")
    + (
        pp.Group(pp.OneOrMore(RATIONAL)).setParseAction(
            lambda t: formula_ast.Param(GroupElement(t[0]))
        )
        | NAME.copy().setParseAction(lambda t: _Named(t[0]))
    )
    + RPAR
)
CUT = (
    LPAR
    + (pp.Keyword("sup") | pp.Keyword("inf"))
    + INTEGER
    + PARAM
    + RPAR
).setParseAction(lambda t: _cut(t[0], t[1], t[2]))
BINARY = (
    LPAR + (pp.Keyword("add") | pp.Keyword("sub")) + _term + _term + RPAR
).setParseAction(
    lambda t: (formula_ast.Add if t[0] == "add" else formula_ast.Sub)(
        t[1], t[2]
    )
)
SCALE = (LPAR + _kw("scale") + RATIONAL + _term + RPAR).setParseAction(
    lambda t: formula_ast.Scale(t[0], t[1])
)
FLOOR = (LPAR + _kw("floor") + _term + RPAR).setParseAction(
    lambda t: formula_ast.Floor(t[0])
)
_term <<= VAR | ZERO | PARAM | CUT | BINARY | SCALE | FLOOR

COMPARE = (
    LPAR + pp.oneOf(" ".join(formula_ast.COMPARISONS)) + _term + _term + RPAR
).setParseAction(lambda t: formula_ast.Compare(t[0], t[1], t[2]))
IN_G = (LPAR + _kw("in-G") + _term + RPAR).setParseAction(
    lambda t: formula_ast.InG(t[0])
)
JUNCTION = (
    LPAR
    + (pp.Keyword("and") | pp.Keyword("or"))
    + pp.Group(pp.OneOrMore(_formula))
    + RPAR
).setParseAction(
    lambda t: (formula_ast.And if t[0] == "and" else formula_ast.Or)(
        list(t[1])
    )
)
NOT = (LPAR + _kw("not") + _formula + RPAR).setParseAction(
    lambda t: formula_ast.Not(t[0])
)
TRUTH = (pp.Keyword("true") | pp.Keyword("false")).setParseAction(
    lambda t: formula_ast.Truth(t[0] == "true")
)
_formula <<= TRUTH | COMPARE | IN_G | JUNCTION | NOT


def _cut(kind: str, level: int, param):
    return formula_ast.Cut(level, param, kind == "sup")


def _resolve(node, params: Dict[str, GroupElement]):
    if isinstance(node, _Named):
        if node.name not in params:
            raise errors.ConversionError(
                f"The formula names a parameter `{node.name}` but no value "
                "was given for it."
            )
        return formula_ast.Param(params[node.name])
    if isinstance(node, formula_ast.Cut) and isinstance(node.value, _Named):
        return attr.evolve(node, value=_resolve(node.value, params).value)
    if isinstance(node, formula_ast.Cut):
        return attr.evolve(node, value=node.value.value)
    if isinstance(node, tuple):
        return tuple(_resolve(n, params) for n in node)
    if isinstance(node, GroupElement) or not attr.has(type(node)):
        return node
    return attr.evolve(
        node,
        **{
            f.name: _resolve(getattr(node, f.name), params)
            for f in attr.fields(type(node))
        },
    )


def formula(
    arg: str, params: Optional[Dict[str, GroupElement]] = None
) -> "formula_ast.FloorFormula":
    tree = _parse(_formula, arg, "a formula", "(and (in-G x) (le 0 x))")
    return _resolve(tree, params or {})
