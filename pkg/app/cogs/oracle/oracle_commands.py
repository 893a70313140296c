import logging
from typing import Optional

import click

import config
from app import checks, converters
from app.classes.session import CalcGroup, Session
from app.cogs.expr import expr_funcs

from . import oracle_funcs

log = logging.getLogger("OAG#Oracle")


@click.command(name="oracle", help="Check an operation by brute force")
@click.argument("source", metavar="SET")
@click.option(
    "--op",
    type=click.Choice(oracle_funcs.OPS),
    default="diff",
    show_default=True,
)
@click.option("--window", type=int, default=config.WINDOW)
@click.option("--samples", type=int, default=config.ORACLE_MEMBERS)
@click.option("--sigma", default=None, help="The word for --op psigma")
@click.pass_obj
def oracle(
    session: Session,
    source: str,
    op: str,
    window: int,
    samples: int,
    sigma: Optional[str],
) -> None:
    checks.positive(samples, "--samples")
    letters = converters.word(sigma, session.rank) if sigma else None
    log.info(f"oracle {op} over {window} elements of {source}")
    d = expr_funcs.load_source(session, source)
    report = oracle_funcs.run_oracle(
        op, d, window, samples, session.seed, session.jobs, letters
    )
    session.emit(report)
    log.info(f"oracle {op}: {report['status']}")


def setup(cli: CalcGroup) -> None:
    cli.add_command(oracle)
