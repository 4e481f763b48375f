import json
import sys
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console

from typlab import settings
from typlab.cli.dump import app as dump_app
from typlab.cli.fit import app as fit_app
from typlab.cli.report import app as report_app
from typlab.cli.sweep import app as sweep_app
from typlab.constants import TyplabError, TyplabValidationError


typlab_cli_app = typer.Typer(
    name="typlab",
    no_args_is_help=True,
)
# Add all subcommands to the main CLI app
typlab_cli_app.add_typer(sweep_app, name="sweep")
typlab_cli_app.add_typer(fit_app)
typlab_cli_app.add_typer(report_app)
typlab_cli_app.add_typer(dump_app)


def load_config(path: Path) -> dict:
    """Read a JSON config whose nesting mirrors subcommands and option names."""
    try:
        with open(path, encoding="utf-8") as config_file:
            config = json.load(config_file)
    except (OSError, json.JSONDecodeError) as invalid:
        raise TyplabValidationError(f"Could not read config {path}: {invalid}") from None
    if not isinstance(config, dict):
        raise TyplabValidationError(f"Config {path} must hold a JSON object")
    return config


@typlab_cli_app.callback()
def main_callback(
    ctx: typer.Context,
    silent: Annotated[
        bool,
        typer.Option(
            "--silent",
            "--quiet",
            "-s",
            help="Run typlab in silent mode, no output to console.",
        ),
    ] = False,
    debug: Annotated[
        bool,
        typer.Option(
            "--debug",
            "-d",
            help="Run typlab in debug mode, printing per-point detail and full tracebacks.",
        ),
    ] = False,
    config: Annotated[
        Path | None,
        typer.Option(
            "--config",
            "-c",
            help="JSON file mirroring command options, e.g. "
            '{"sweep": {"goe": {"samples": 50}}}. Flags override it.',
            exists=True,
            dir_okay=False,
        ),
    ] = None,
):
    """typlab - how typical are the eigenstates of spin-chain Hamiltonians?"""
    settings.print_config["silent"] = silent or settings.TYPLAB_SILENT
    settings.print_config["debug"] = debug or settings.DEBUG
    if config is not None:
        ctx.default_map = load_config(config)


def main():
    try:
        typlab_cli_app()
    except KeyboardInterrupt:
        sys.exit(1)
    except TyplabError as typlab_error:
        console = Console()
        if settings.print_config["debug"]:
            console.print_exception(show_locals=True)
        console.print(str(typlab_error))
        sys.exit(typlab_error.exit_status)


if __name__ == "__main__":
    main()
