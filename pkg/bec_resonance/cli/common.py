"""Shared options and error handling of the subcommands."""

from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Iterator

import typer
from pydantic import ValidationError
from rich.console import Console

from bec_resonance.experiments.model import RunResult
from bec_resonance.util.cli import console_channel_statistics, console_key_values
from bec_resonance.util.errors import (
    ConfigError,
    ContractError,
    DomainError,
    IntegrationError,
    TruncationError,
)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
DEFAULT_OUTPUT = "output"

OutOption = Annotated[
    Path | None, typer.Option("--out", "-o", help="Directory for CSV and metadata files")
]
TolOption = Annotated[
    float | None, typer.Option("--tol", help="Integrator tolerance, overrides the config")
]
ThreadsOption = Annotated[int, typer.Option("--threads", "-t", min=1, help="Parallel workers")]
VerboseOption = Annotated[bool, typer.Option("--verbose", "-v", help="Log debug messages")]

err_console = Console(stderr=True)


@contextmanager
def exit_on_error() -> Iterator[None]:
    """
    Map library errors onto the documented exit statuses.

    Config loading converts validation failures into `ConfigError`, so a
    `ValidationError` that still escapes comes from a model built mid-run.
    """

    try:
        yield
    except (IntegrationError, TruncationError, ValidationError) as e:
        err_console.print(f"[bold red]Numerical failure:[/bold red] {e}")
        raise typer.Exit(EXIT_NUMERICAL)
    except (ConfigError, DomainError, ContractError) as e:
        err_console.print(f"[bold red]Invalid configuration:[/bold red] {e}")
        raise typer.Exit(EXIT_CONFIG)


def output_dir(out: Path | None, configured: str | None) -> str:
    if out is not None:
        return str(out)
    return configured or DEFAULT_OUTPUT


def console_run_result(result: RunResult, console: Console):
    rows = [
        ["Name", result.name],
        ["Preset", str(result.metadata.get("preset"))],
        ["Frame", str(result.metadata.get("frame"))],
        ["Tolerance", str(result.metadata.get("tolerance"))],
        ["Rows", str(result.frame.height)],
        ["CSV", str(result.csv_path)],
        ["Metadata", str(result.metadata_path)],
    ]
    if result.resonance_search is not None:
        search = result.resonance_search
        rows += [
            ["", ""],
            ["Nearest Resonance ω", f"{search.omega:.6g}"],
            ["Resonant Harmonic n", str(search.n)],
            ["Residual Detuning", f"{search.detuning:.6g}"],
        ]
    console_key_values(console=console, title=f"Run {result.name}", rows=rows)
    console_channel_statistics(result.statistics, title="Channels", console=console)
