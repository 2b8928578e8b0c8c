# genperm/main.py
import click
from pydantic import ValidationError

from genperm import __version__
from genperm.backend.cli.commands import COMMANDS, GROUPS, CliSettings
from genperm.backend.config import DEFAULT_JOBS, LOG_LEVEL, setup_logging
from genperm.backend.errors import GenPermError

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


class GenPermGroup(click.Group):
    """Root group: library and model errors exit 1 with a one-line reason on stderr."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (GenPermError, ValidationError) as exc:
            reason = " ".join(str(exc).split())
            click.echo(f"error: {type(exc).__name__}: {reason}", err=True)
            ctx.exit(1)


@click.group(cls=GenPermGroup)
@click.version_option(__version__, prog_name="genperm")
@click.option("--one-indexed", is_flag=True, help="Node ids in every input and output start at 1.")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=LOG_LEVEL, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=DEFAULT_JOBS, show_default=True,
              help="Parallel trials for sweeps and repeated runs.")
@click.pass_context
def cli(ctx: click.Context, one_indexed: bool, log_level: str, jobs: int):
    """GenPerm community scoring, MaxGenPerm detection and evaluation experiments."""
    setup_logging(log_level)
    ctx.obj = CliSettings(one_indexed=one_indexed, jobs=jobs)


for command in COMMANDS:
    cli.add_command(command)
for name, group in GROUPS.items():
    cli.add_command(group, name=name)


def main(argv=None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="genperm")
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0
