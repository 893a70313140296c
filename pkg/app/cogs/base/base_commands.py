import click

import config
from app.database.formats import ALL_FORMATS

from ...classes.session import CalcGroup, Session

ABOUT = (
    "oag-calc computes with discrete sets in the lexicographic group Q^r: "
    "difference sets, Z-chains, eventual periods, pseudo-arithmetic "
    "pieces, integer-like groups and defining formulas."
)


@click.command(name="about", help="Explains what this tool computes")
@click.pass_context
def about(ctx: click.Context) -> None:
    session: Session = ctx.obj
    cli: CalcGroup = ctx.find_root().command
    session.emit(
        {
            "about": ABOUT,
            "rank": session.rank,
            "seed": session.seed,
            "jobs": session.jobs,
            "log_file": config.LOG_FILE,
            "extensions": list(cli.extensions),
        },
        ABOUT,
    )


@click.command(name="formats", help="Lists the JSON file formats")
@click.pass_obj
def formats(session: Session) -> None:
    shown = {
        name: {
            "required": sorted(fmt["required"]),
            "optional": sorted(fmt["optional"]),
        }
        for name, fmt in ALL_FORMATS.items()
    }
    session.emit(shown)


def setup(cli: CalcGroup) -> None:
    cli.add_command(about)
    cli.add_command(formats)
