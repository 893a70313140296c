import importlib
import json
import logging
import traceback
from typing import Any, Callable, Dict, List, Optional

import click

from .. import errors
from ..database.database import Database
from ..utils import render_text

log = logging.getLogger("OAG#Session")


class Session:
    """What every command needs: the rank, the seed and the files."""

    def __init__(
        self,
        rank: int,
        seed: int,
        jobs: int = 1,
        text: bool = False,
        db: Optional[Database] = None,
    ) -> None:
        self.rank = rank
        self.seed = seed
        self.jobs = jobs
        self.text = text
        self.db = db or Database()

    def emit(self, payload: Dict[str, Any], text: Optional[str] = None):
        """Print a report as JSON, or as text when --text was passed."""
        if self.text:
            click.echo(text if text is not None else render_text(payload))
        else:
            click.echo(
                json.dumps(payload, indent=2, ensure_ascii=False, default=str)
            )


class CalcGroup(click.Group):
    """A command group that hands command errors to its listeners."""

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.error_listeners: List[Callable] = []
        self.extensions: List[str] = []

    def load_extension(self, name: str) -> None:
        module = importlib.import_module(name)
        try:
            setup = getattr(module, "setup")
        except AttributeError:
            raise errors.ValidationError(
                f"The extension `{name}` has no setup function."
            )
        setup(self)
        self.extensions.append(name)
        log.debug(f"loaded {name}")

    def add_error_listener(self, listener: Callable) -> None:
        self.error_listeners.append(listener)

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as e:
            if not self.error_listeners:
                raise
            code = 1
            for listener in self.error_listeners:
                code = max(code, listener(ctx, e))
            ctx.exit(code)


def unexpected(e: Exception) -> str:
    tb = "".join(traceback.format_tb(e.__traceback__))
    return f"{type(e).__name__}: {e}\n{tb}"
