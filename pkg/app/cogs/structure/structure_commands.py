import logging
from typing import List

import click

import config
from app import checks, converters
from app.classes.lexgroup import GroupElement
from app.classes.session import CalcGroup, Session
from app.cogs.expr import expr_funcs

from . import structure_funcs

log = logging.getLogger("OAG#Structure")


@click.command(name="period", help="Eventual periods of every chain")
@click.argument("source", metavar="SET")
@click.option(
    "--bound",
    type=int,
    default=config.PERIOD_BOUND,
    help="Upper bound on the factor counts",
)
@click.pass_obj
def period(session: Session, source: str, bound: int) -> None:
    checks.positive(bound, "--bound")
    log.info(f"period {source} bound={bound}")
    d = expr_funcs.load_source(session, source)
    session.emit(structure_funcs.period_report(d, bound))


@click.command(name="psigma", help="Elements followed by the word σ")
@click.argument("source", metavar="SET")
@click.option("--sigma", required=True, help="A word like [(0, 1), (0, 2)]")
@click.pass_obj
def psigma(session: Session, source: str, sigma: str) -> None:
    letters: List[GroupElement] = converters.word(sigma, session.rank)
    log.info(f"psigma {source} σ={sigma}")
    d = expr_funcs.load_source(session, source)
    session.emit(structure_funcs.psigma_report(d, letters))


@click.command(name="decompose", help="Pseudo-arithmetic decomposition")
@click.argument("source", metavar="SET")
@click.pass_obj
def decompose(session: Session, source: str) -> None:
    log.info(f"decompose {source}")
    d = expr_funcs.load_source(session, source)
    report = structure_funcs.decompose_report(d)
    session.emit(report)
    log.info(f"decompose found {len(report['pieces'])} pieces")


@click.command(name="uniformize", help="Split into uniformized pieces")
@click.argument("source", metavar="SET")
@click.pass_obj
def uniformize(session: Session, source: str) -> None:
    log.info(f"uniformize {source}")
    d = expr_funcs.load_source(session, source)
    session.emit(structure_funcs.uniformize_report(d))


@click.command(name="archsplit", help="Split by Archimedean class")
@click.argument("source", metavar="SET")
@click.pass_obj
def archsplit(session: Session, source: str) -> None:
    log.info(f"archsplit {source}")
    d = expr_funcs.load_source(session, source)
    session.emit(structure_funcs.archsplit_report(d))


def setup(cli: CalcGroup) -> None:
    for command in (period, psigma, decompose, uniformize, archsplit):
        cli.add_command(command)
