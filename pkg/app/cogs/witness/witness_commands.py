import logging
from typing import Optional, Tuple

import click

import config
from app import checks, errors
from app.classes.inp_pattern import InpPatternInstance
from app.classes.session import CalcGroup, Session
from app.cogs.expr import expr_funcs
from app.database.formats import INSTANCE

from . import witness_funcs

log = logging.getLogger("OAG#Witness")


@click.command(name="witness-inp", help="Build and verify an inp-pattern")
@click.option("--levels", type=int, default=None, help="Standard family")
@click.option(
    "--set",
    "sources",
    multiple=True,
    metavar="SET",
    help="D_0, D_1, … in order; replaces the standard family",
)
@click.option("--columns", type=int, default=config.COLUMNS)
@click.option("--dense", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def witness_inp(
    session: Session,
    levels: Optional[int],
    sources: Tuple[str, ...],
    columns: int,
    dense: bool,
    out: Optional[str],
) -> None:
    checks.positive(columns, "--columns")
    if sources:
        ds = expr_funcs.load_sets(
            list(sources), expr_funcs.options_for(session)
        )
        if levels is not None and levels + 1 != len(ds):
            raise errors.ValidationError(
                f"--levels {levels} needs {levels + 1} sets, "
                f"{len(ds)} were given."
            )
    else:
        n = checks.positive(levels or 1, "--levels")
        rank = max(session.rank, n + 1)
        if rank > config.MAX_RANK:
            raise errors.ValidationError(
                f"--levels is at most {config.MAX_RANK - 1}: the standard "
                f"family of {n} levels needs rank {n + 1}."
            )
        if rank != session.rank:
            log.info(f"standard family raised to rank {rank}")
        ds = witness_funcs.standard_family(rank, n)
    log.info(f"witness-inp levels={len(ds) - 1} columns={columns}")
    report = witness_funcs.witness_report(
        ds, columns, dense, session.seed, session.jobs
    )
    if out:
        session.db.save(out, report["instance"])
        report["saved"] = out
    session.emit(report)


@click.command(name="verify-inp", help="Replay a saved inp-pattern instance")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_obj
def verify_inp(session: Session, path: str) -> None:
    value = session.db.load_any(path)
    if not isinstance(value, InpPatternInstance):
        raise errors.ConversionError(
            f"`{path}` is not an {INSTANCE['name']} file."
        )
    log.info(f"verify-inp {path}")
    session.emit(witness_funcs.verify_report(value, session.jobs))


def setup(cli: CalcGroup) -> None:
    cli.add_command(witness_inp)
    cli.add_command(verify_inp)
