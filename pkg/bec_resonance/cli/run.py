"""CLI subcommand running two-well experiments and presets."""

from concurrent.futures import ThreadPoolExecutor
from typing import Annotated

import typer
from rich.console import Console

from bec_resonance.cli.common import (
    OutOption,
    ThreadsOption,
    TolOption,
    VerboseOption,
    console_run_result,
    exit_on_error,
    output_dir,
)
from bec_resonance.experiments.core import resolve_experiment, run_experiment, with_overrides
from bec_resonance.util.cli import console_header
from bec_resonance.util.log import configure_logging

console = Console()


def run_command(
    sources: Annotated[
        list[str], typer.Argument(help="Preset names (fig1 ... fig4) or experiment config files")
    ],
    out: OutOption = None,
    tol: TolOption = None,
    threads: ThreadsOption = 1,
    verbose: VerboseOption = False,
) -> None:
    """Integrate two-well experiments and write their population time series."""

    configure_logging(verbose)
    console_header(console=console, title="Two-Well Experiment")

    with exit_on_error():
        configs = []
        for source in sources:
            cfg = resolve_experiment(source)
            configs.append(
                with_overrides(cfg, tolerance=tol, output_dir=output_dir(out, cfg.output_dir))
            )

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_experiment, configs))

    for result in results:
        console_run_result(result, console)
