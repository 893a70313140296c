import logging
import os
import sys
import time
from typing import List, Optional

import click
from dotenv import load_dotenv

import config
from app import checks
from app.classes.session import CalcGroup, Session
from app.database.database import Database

load_dotenv()

EXTENSIONS = [
    "app.cogs.base.base_commands",
    "app.cogs.base.base_events",
    "app.cogs.expr.expr_commands",
    "app.cogs.calculus.calculus_commands",
    "app.cogs.structure.structure_commands",
    "app.cogs.groups.groups_commands",
    "app.cogs.witness.witness_commands",
    "app.cogs.oracle.oracle_commands",
]
FORMAT = "[%(asctime)s %(name)s/%(levelname)s] %(message)s"

log = logging.getLogger("OAG#Launcher")


def setup_logging(
    level: str = config.LOG_LEVEL, path: str = config.LOG_FILE
) -> None:
    root = logging.getLogger()
    root.setLevel(getattr(logging, level, logging.INFO))
    hdlr = logging.StreamHandler(sys.stderr)
    hdlr.setFormatter(logging.Formatter(FORMAT))
    handlers = [hdlr]
    if path:
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        fhdlr = logging.FileHandler(path, encoding="utf-8")
        fhdlr.setFormatter(logging.Formatter(FORMAT))
        handlers.append(fhdlr)
    root.handlers = handlers


def build_cli(extensions: List[str] = EXTENSIONS) -> CalcGroup:
    @click.group(cls=CalcGroup, name="oag-calc")
    @click.option(
        "--rank", type=int, default=config.RANK, help="Session rank r"
    )
    @click.option(
        "--seed", type=int, default=config.SEED, help="Seed for sampling"
    )
    @click.option(
        "--jobs", type=int, default=config.JOBS, help="Worker processes"
    )
    @click.option("--text", is_flag=True, help="Plain text instead of JSON")
    @click.pass_context
    def cli(ctx: click.Context, rank: int, seed: int, jobs: int, text: bool):
        ctx.obj = Session(
            checks.valid_rank(rank),
            seed,
            checks.positive(jobs, "--jobs"),
            text,
            Database(),
        )

    for ext in extensions:
        cli.load_extension(ext)
    return cli


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    cli = build_cli()
    start = time.perf_counter()
    try:
        code = cli.main(
            args=argv, prog_name="oag-calc", standalone_mode=False
        )
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    log.debug(f"finished in {time.perf_counter() - start:.3f}s")
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
