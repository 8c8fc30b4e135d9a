from rich.align import Align
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from pydantic import BaseModel

from bec_resonance.util.model import ChannelStatistics

WIDTH_COL_FIRST = 30
WIDTH_TOTAL = 90
WIDTH_REMAIN = WIDTH_TOTAL - WIDTH_COL_FIRST


class TableColumn(BaseModel):
    title: str
    style: str | None = None
    width: int = 20


def console_header(console: Console, title: str):
    title = Panel(
        renderable=Align(title, align="center"),
        title="⚛️ bec-resonance",
        width=WIDTH_TOTAL,
        style="bold blue",
        padding=1,
    )

    console.print(title)
    console.print()


def console_table(
    console: Console, title: str, columns: list[TableColumn], rows: list[list]
):
    table = Table(title=title, show_header=True, header_style="bold magenta")
    for column in columns:
        table.add_column(column.title, style=column.style, width=column.width)
    for row in rows:
        table.add_row(*[str(item) for item in row])

    console.print(table)
    console.print()


def format_number(val: int | float | str) -> str:
    """Format numbers with appropriate precision."""
    if isinstance(val, bool):
        return str(val)
    elif isinstance(val, int):
        return f"{val:,}"
    elif isinstance(val, float):
        return f"{val:.6g}"
    else:
        return val


def console_channel_statistics(
    stats: list[ChannelStatistics], title: str, console: Console
):
    """Render per-channel summary statistics of a time series."""

    columns = [
        TableColumn(title="Channel", style="cyan", width=16),
        TableColumn(title="Min", style="white", width=11),
        TableColumn(title="Median", style="white", width=11),
        TableColumn(title="Max", style="green", width=11),
        TableColumn(title="Mean", style="white", width=11),
        TableColumn(title="Final", style="yellow", width=11),
    ]

    rows = [
        [
            stat.channel,
            format_number(stat.min),
            format_number(stat.q50),
            format_number(stat.max),
            format_number(stat.mean),
            format_number(stat.final),
        ]
        for stat in stats
    ]

    console_table(console=console, title=title, columns=columns, rows=rows)


def console_key_values(console: Console, title: str, rows: list[list]):
    columns = [
        TableColumn(title="Property", style="cyan", width=WIDTH_COL_FIRST),
        TableColumn(title="Value", style="white", width=WIDTH_REMAIN),
    ]
    console_table(console=console, title=title, columns=columns, rows=rows)
