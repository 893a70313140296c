import logging

import click

import config
from app.classes.session import CalcGroup, Session

from . import expr_funcs

log = logging.getLogger("OAG#Expr")


@click.command(name="parse", help="Print the normal form of an expression")
@click.argument("text")
@click.pass_obj
def parse(session: Session, text: str) -> None:
    expr = expr_funcs.parse(text)
    shown = expr_funcs.show(expr)
    session.emit({"expr": shown, "op": expr.op}, shown)


@click.command(name="eval", help="Evaluate an expression into a report")
@click.argument("text")
@click.option("--columns", type=int, default=config.COLUMNS)
@click.option("--samples", type=int, default=config.SAMPLES)
@click.option("--dense", is_flag=True)
@click.pass_obj
def evaluate(
    session: Session, text: str, columns: int, samples: int, dense: bool
) -> None:
    expr = expr_funcs.parse(text)
    log.info(f"eval {expr_funcs.show(expr)}")
    options = expr_funcs.options_for(
        session, columns=columns, samples=samples, dense=dense
    )
    session.emit(expr_funcs.run(expr, options))
    log.info(f"eval {expr.op} done")


def setup(cli: CalcGroup) -> None:
    cli.add_command(parse)
    cli.add_command(evaluate)
