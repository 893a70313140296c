import logging

import click

import config
from app import checks
from app.classes.session import CalcGroup, Session
from app.cogs.expr import expr_funcs

from . import calculus_funcs

log = logging.getLogger("OAG#Calculus")


@click.command(name="diff", help="The difference set D′")
@click.argument("source", metavar="SET")
@click.pass_obj
def diff(session: Session, source: str) -> None:
    log.info(f"diff {source}")
    d = expr_funcs.load_source(session, source)
    session.emit(calculus_funcs.diff_report(d))


@click.command(name="iterdiff", help="The n-th iterated difference set")
@click.argument("source", metavar="SET")
@click.option("--n", "n", type=int, default=config.ITER_DEPTH)
@click.pass_obj
def iterdiff(session: Session, source: str, n: int) -> None:
    checks.positive(n, "--n")
    log.info(f"iterdiff {source} n={n}")
    d = expr_funcs.load_source(session, source)
    session.emit(calculus_funcs.iter_report(d, n))


@click.command(name="chains", help="The Z-chains and their words")
@click.argument("source", metavar="SET")
@click.pass_obj
def chains(session: Session, source: str) -> None:
    log.info(f"chains {source}")
    d = expr_funcs.load_source(session, source)
    session.emit(calculus_funcs.chains_report(d))


@click.command(name="cstar", help="Classes recurring in right-infinite chains")
@click.argument("source", metavar="SET")
@click.pass_obj
def cstar(session: Session, source: str) -> None:
    log.info(f"cstar {source}")
    d = expr_funcs.load_source(session, source)
    session.emit(calculus_funcs.cstar_report(d))


def setup(cli: CalcGroup) -> None:
    for command in (diff, iterdiff, chains, cstar):
        cli.add_command(command)
