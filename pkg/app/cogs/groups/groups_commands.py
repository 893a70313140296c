import logging
from typing import Optional

import click

import config
from app import checks, converters, errors
from app.classes.group import IntegerLikeGroup
from app.classes.session import CalcGroup, Session
from app.cogs.expr import expr_funcs
from app.database import database
from app.database.formats import FORMULA

from . import groups_funcs

log = logging.getLogger("OAG#Groups")


@click.command(name="defing", help="A quantifier-free formula for a set")
@click.option("--set", "source", required=True, metavar="SET")
@click.option("--samples", type=int, default=config.SAMPLES)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def defing(
    session: Session, source: str, samples: int, out: Optional[str]
) -> None:
    checks.positive(samples, "--samples")
    log.info(f"defing {source}")
    d = expr_funcs.load_source(session, source)
    report = groups_funcs.defing_report(d, samples, session.seed)
    if out:
        phi = converters.formula(report["formula"])
        g = IntegerLikeGroup.from_json(report["group"])
        session.db.save(out, database.formula_to_json(phi, g))
        report["saved"] = out
    session.emit(report, report["formula"])


@click.command(name="holds", help="Evaluate a saved formula at an element")
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("at", metavar="ELEMENT")
@click.pass_obj
def holds(session: Session, path: str, at: str) -> None:
    value = session.db.load_any(path)
    if not isinstance(value, tuple):
        raise errors.ConversionError(
            f"`{path}` is not a {FORMULA['name']} file."
        )
    phi, g = value
    x = converters.element(at, g.rank)
    result = groups_funcs.eval_formula(phi, x, g)
    session.emit({"element": at, "holds": result}, str(result).lower())


def setup(cli: CalcGroup) -> None:
    cli.add_command(defing)
    cli.add_command(holds)
