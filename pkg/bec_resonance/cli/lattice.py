"""CLI subcommand for tilted-lattice runs."""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
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
from bec_resonance.experiments.core import load_config, run_lattice, with_overrides
from bec_resonance.experiments.model import LatticeExperimentConfig
from bec_resonance.util.cli import console_header
from bec_resonance.util.log import configure_logging

console = Console()


def lattice_command(
    configs: Annotated[list[Path], typer.Argument(help="Paths to lattice experiment configs")],
    out: OutOption = None,
    tol: TolOption = None,
    threads: ThreadsOption = 1,
    verbose: VerboseOption = False,
) -> None:
    """Evolve Fock states of tilted Bose-Hubbard chains and write site statistics."""

    configure_logging(verbose)
    console_header(console=console, title="Tilted Lattice")

    with exit_on_error():
        resolved = []
        for path in configs:
            cfg = load_config(path, LatticeExperimentConfig)
            resolved.append(
                with_overrides(cfg, tolerance=tol, output_dir=output_dir(out, cfg.output_dir))
            )

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_lattice, resolved))

    for result in results:
        console_run_result(result, console)
