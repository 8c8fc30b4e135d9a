"""CLI subcommand for resonance scans."""

from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console

from bec_resonance.cli.common import (
    OutOption,
    ThreadsOption,
    VerboseOption,
    exit_on_error,
    output_dir,
)
from bec_resonance.experiments.core import load_config, scan, with_overrides
from bec_resonance.experiments.model import ScanConfig, ScanResult
from bec_resonance.util.cli import TableColumn, console_header, console_table, format_number
from bec_resonance.util.log import configure_logging

console = Console()

PREVIEW_ROWS = 20


def console_scan_preview(result: ScanResult):
    table = result.table
    columns = [
        TableColumn(title=name, style="cyan" if index == 0 else None, width=12)
        for index, name in enumerate(table.columns)
    ]
    rows = [
        [format_number(value) for value in row]
        for row in table.head(PREVIEW_ROWS).iter_rows()
    ]
    title = f"{result.name}: {table.height} rows from {result.points} points"
    console_table(console=console, title=title, columns=columns, rows=rows)


def scan_command(
    config: Annotated[Path, typer.Argument(help="Path to a scan config")],
    out: OutOption = None,
    threads: ThreadsOption = 1,
    verbose: VerboseOption = False,
) -> None:
    """Tabulate resonance detunings, Bessel weights and effective couplings over a sweep."""

    configure_logging(verbose)
    console_header(console=console, title="Resonance Scan")

    with exit_on_error():
        cfg = load_config(config, ScanConfig)
        cfg = with_overrides(cfg, output_dir=output_dir(out, cfg.output_dir))
        result = scan(cfg, threads=threads)

    console_scan_preview(result)
    console.print(f"Table written to {result.csv_path}")
