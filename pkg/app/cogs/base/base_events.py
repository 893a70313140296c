import json
import logging

import click

from ... import errors
from ...classes.session import CalcGroup, unexpected

log = logging.getLogger("OAG#Events")

EXPECTED_ERRORS = [
    errors.ConversionError,
    errors.ExprSyntaxError,
    errors.RankMismatch,
    errors.NotPositive,
    errors.NotRationallyDependent,
    errors.Empty,
    errors.UnboundedBelow,
    errors.UnboundedAbove,
    errors.NoSuccessor,
    errors.NoPredecessor,
    errors.TooFewElements,
    errors.ValidationError,
    errors.NotRepresentable,
    errors.NotDiscrete,
    errors.NotLatticeAligned,
    errors.NotMember,
    errors.IsMaximal,
    errors.IsMinimal,
    errors.TooSmall,
    errors.Exhausted,
    errors.FiniteChain,
    errors.FiniteWord,
    errors.BoundViolated,
    errors.AlphabetMismatch,
    errors.NotUniformized,
    errors.NotPseudoArithmetic,
    errors.DifferentEta,
    errors.DifferentMin,
    errors.InvalidGroup,
    errors.IncompatibleEtas,
    errors.NotNormalized,
    errors.NotDecomposable,
    errors.HypothesisFailed,
]
VERIFICATION_ERRORS = [errors.VerificationFailed]

USAGE_EXIT = 1
VERIFY_EXIT = 2


def error_payload(e: Exception) -> dict:
    payload = {"error": type(e).__name__, "message": str(e)}
    for field in ("line", "col", "k", "level", "stage", "window", "report"):
        value = getattr(e, field, None)
        if value not in (None, [], {}):
            payload[field] = value
    return payload


def on_command_error(ctx: click.Context, e: Exception) -> int:
    name = ctx.invoked_subcommand or ctx.info_name
    if isinstance(e, tuple(VERIFICATION_ERRORS)):
        log.warning(f"{name}: verification failed: {e}")
        click.echo(json.dumps(error_payload(e), indent=2, default=str))
        return VERIFY_EXIT
    if isinstance(e, tuple(EXPECTED_ERRORS)):
        log.warning(f"{name}: {type(e).__name__}: {e}")
        click.echo(str(e), err=True)
        click.echo(json.dumps(error_payload(e), default=str))
        return USAGE_EXIT
    log.error(f"{name} failed unexpectedly\n{unexpected(e)}")
    click.echo(
        "Something went wrong while running this command. If the problem "
        "persists, please report it with the log file.",
        err=True,
    )
    click.echo(json.dumps(error_payload(e), default=str))
    return USAGE_EXIT


def setup(cli: CalcGroup) -> None:
    cli.add_error_listener(on_command_error)
