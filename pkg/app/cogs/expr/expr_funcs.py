"""Set expressions: a small language over the calculus.

    diff(load("d.json"))
    iter(block((0, 0), [(0, 1), (0, 2)], nat), 2)
    union(points((0, 1), (0, 5)), translate(load("e.json"), (1, 0)))

Set operators nest freely; report operators (decompose, chains, …) may
only appear at the top.
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import attr
import pyparsing as pp

from ... import converters, errors
from ...classes.block_set import Block, BlockSet, validate
from ...classes.index_set import IndexSet
from ...classes.lexgroup import GroupElement, format_element, format_word
from ...classes.std_form import StdForm
from ...converters import COMMA, ELEMENT, INDICES, INTEGER, LPAR, RATIONAL
from ...converters import RPAR, WORD
from ...database import database
from ...utils import fmt_fraction
from ..calculus import calculus_funcs
from ..groups import groups_funcs
from ..setrep import setrep_funcs
from ..structure import structure_funcs
from ..witness import witness_funcs

log = logging.getLogger("OAG#Expr")

Arg = Union["Expr", int, Fraction, GroupElement, Tuple, str, IndexSet]


@attr.s(frozen=True, slots=True)
class Expr:
    op: str = attr.ib()
    args: Tuple = attr.ib(converter=tuple)

    def __str__(self) -> str:
        return show(self)


@attr.s(frozen=True, slots=True)
class Options:
    rank: int = attr.ib()
    seed: int = attr.ib(default=0)
    jobs: int = attr.ib(default=1)
    columns: int = attr.ib(default=8)
    samples: int = attr.ib(default=100)
    dense: bool = attr.ib(default=False)
    root: Optional[Path] = attr.ib(default=None)


UNARY_SETS = ("diff",)
UNARY_REPORTS = (
    "decompose",
    "chains",
    "cstar",
    "uniformize",
    "archsplit",
    "defing",
)
SET_OPS = ("load", "block", "points", "diff", "iter", "union")
SET_OPS += ("translate", "scale", "psigma")
REPORT_OPS = UNARY_REPORTS + ("witness",)


# Grammar
def _kw(name: str) -> pp.ParserElement:
    return pp.Keyword(name)


def _node(tokens) -> Expr:
    op, *args = tokens
    return Expr(op, args)


EXPR = pp.Forward()
STRING = pp.QuotedString('"', escChar="\\")
_word = WORD.copy().addParseAction(lambda t: [tuple(t[0])])

LOAD = _kw("load") + LPAR + STRING + RPAR
BLOCK = (
    _kw("block")
    + LPAR
    + ELEMENT
    + COMMA
    + _word
    + COMMA
    + INDICES
    + RPAR
)
POINTS = _kw("points") + LPAR + pp.Optional(pp.delimitedList(ELEMENT)) + RPAR
UNARY = pp.MatchFirst(
    [_kw(name) for name in UNARY_SETS + UNARY_REPORTS]
) + (LPAR + EXPR + RPAR)
ITER = _kw("iter") + LPAR + EXPR + COMMA + INTEGER + RPAR
UNION = _kw("union") + LPAR + EXPR + COMMA + pp.delimitedList(EXPR) + RPAR
TRANSLATE = _kw("translate") + LPAR + EXPR + COMMA + ELEMENT + RPAR
SCALE = _kw("scale") + LPAR + EXPR + COMMA + RATIONAL + RPAR
PSIGMA = _kw("psigma") + LPAR + EXPR + COMMA + _word + RPAR
WITNESS = _kw("witness") + LPAR + pp.delimitedList(EXPR) + RPAR

_CALLS = [
    LOAD,
    BLOCK,
    POINTS,
    UNARY,
    ITER,
    UNION,
    TRANSLATE,
    SCALE,
    PSIGMA,
    WITNESS,
]
EXPR <<= pp.MatchFirst(
    [pp.Group(c).setParseAction(lambda t: _node(t[0])) for c in _CALLS]
)


def parse(text: str) -> Expr:
    try:
        return EXPR.parseString(text, parseAll=True)[0]
    except (pp.ParseException, pp.ParseFatalException) as e:
        raise errors.ExprSyntaxError(
            f"I couldn't read `{text.strip()}` as a set expression: {e.msg}",
            e.lineno,
            e.col,
        )
    except ZeroDivisionError:
        raise errors.ConversionError(f"`{text.strip()}` divides by zero.")


# Printing
def _show_arg(arg: Arg) -> str:
    if isinstance(arg, Expr):
        return show(arg)
    if isinstance(arg, GroupElement):
        return format_element(arg)
    if isinstance(arg, tuple):
        return format_word(arg)
    if isinstance(arg, IndexSet):
        return converters.indices_text(arg)
    if isinstance(arg, str):
        return json.dumps(arg, ensure_ascii=False)
    if isinstance(arg, Fraction):
        return fmt_fraction(arg)
    return str(arg)


def show(expr: Expr) -> str:
    """Normal form: one space after each comma, no other whitespace."""
    return f"{expr.op}({', '.join(_show_arg(a) for a in expr.args)})"


# Evaluation
def _check_rank(d: BlockSet, options: Options, where: str) -> BlockSet:
    if d.rank != options.rank:
        raise errors.RankMismatch(
            f"{where} has rank {d.rank} but the session rank is "
            f"{options.rank}."
        )
    return d


def load_file(path: Union[str, Path], options: Options) -> BlockSet:
    db = database.Database(options.root or ".")
    value = db.load_any(path)
    if isinstance(value, StdForm):
        value = setrep_funcs.std_to_blockset(value)
    if not isinstance(value, BlockSet):
        raise errors.ConversionError(f"`{path}` does not hold a set.")
    return _check_rank(value, options, f"`{path}`")


def evaluate_set(expr: Expr, options: Options) -> BlockSet:
    op, args = expr.op, expr.args
    if op in REPORT_OPS:
        raise errors.ValidationError(
            f"`{op}` produces a report, so it cannot be used as a set."
        )
    if op == "load":
        return load_file(args[0], options)
    if op == "block":
        base, letters, indices = args
        block = Block(base, letters, indices)
        return _check_rank(
            validate([block], block.rank), options, "The block"
        )
    if op == "points":
        return _check_rank(
            BlockSet.from_points(args, options.rank), options, "The points"
        )
    if op == "union":
        sets = [evaluate_set(a, options) for a in args]
        return setrep_funcs.union_all(sets, options.rank)

    d = evaluate_set(args[0], options)
    if op == "diff":
        return BlockSet.from_points(calculus_funcs.diff_set(d), d.rank)
    if op == "iter":
        stage = calculus_funcs.iter_diff(d, args[1])
        if isinstance(stage, BlockSet):
            return stage
        return BlockSet.from_points(stage, d.rank)
    if op == "translate":
        return d.translate(args[1])
    if op == "scale":
        return d.scale(args[1])
    if op == "psigma":
        return structure_funcs.p_sigma(d, args[1])
    raise errors.ValidationError(f"`{op}` is not an operator.")


def _set_report(d: BlockSet) -> Dict[str, Any]:
    report = {
        "set": database.blockset_to_json(d),
        "window": [
            format_element(x) for x in sorted(setrep_funcs.sample(d, 4))
        ],
    }
    if d.is_finite():
        report["size"] = d.size()
    return report


def run(expr: Expr, options: Options) -> Dict[str, Any]:
    """Evaluate an expression into a JSON report."""
    log.debug(f"running {show(expr)}")
    op, args = expr.op, expr.args
    if op == "witness":
        ds = [evaluate_set(a, options) for a in args]
        return witness_funcs.witness_report(
            ds, options.columns, options.dense, options.seed, options.jobs
        )
    if op == "diff":
        return calculus_funcs.diff_report(evaluate_set(args[0], options))
    if op == "iter":
        d = evaluate_set(args[0], options)
        return calculus_funcs.iter_report(d, args[1])
    if op == "psigma":
        d = evaluate_set(args[0], options)
        return structure_funcs.psigma_report(d, args[1])
    if op in UNARY_REPORTS:
        d = evaluate_set(args[0], options)
        if op == "defing":
            return groups_funcs.defing_report(
                d, options.samples, options.seed
            )
        return REPORTS[op](d)
    return _set_report(evaluate_set(expr, options))


REPORTS = {
    "decompose": structure_funcs.decompose_report,
    "chains": calculus_funcs.chains_report,
    "cstar": calculus_funcs.cstar_report,
    "uniformize": structure_funcs.uniformize_report,
    "archsplit": structure_funcs.archsplit_report,
}


# Sources
def looks_like_expr(text: str) -> bool:
    head = text.strip().split("(", 1)[0].strip()
    return head in SET_OPS + REPORT_OPS


def load_set(source: str, options: Options) -> BlockSet:
    """A set from a file path or an inline set expression."""
    if looks_like_expr(source):
        return evaluate_set(parse(source), options)
    return load_file(source, options)


def load_sets(sources: List[str], options: Options) -> List[BlockSet]:
    return [load_set(s, options) for s in sources]


def options_for(session, **extra) -> Options:
    return Options(
        rank=session.rank,
        seed=session.seed,
        jobs=session.jobs,
        root=session.db.root,
        **extra,
    )


def load_source(session, source: str) -> BlockSet:
    return load_set(source, options_for(session))
