"""CLI subcommand listing the named presets."""

from rich.console import Console

from bec_resonance.experiments.presets import PRESETS
from bec_resonance.util.cli import TableColumn, console_header, console_table, format_number

console = Console()


def presets_command() -> None:
    """List the built-in figure presets and their parameters (units of κ)."""

    console_header(console=console, title="Presets")

    columns = [
        TableColumn(title="Preset", style="cyan", width=8),
        TableColumn(title="Modulation", width=18),
        TableColumn(title="N", width=4),
        TableColumn(title="ω", width=6),
        TableColumn(title="ε1", width=10),
        TableColumn(title="δ0", width=6),
        TableColumn(title="δ1", width=6),
        TableColumn(title="t_max", width=6),
        TableColumn(title="Initial State", style="green", width=20),
    ]

    rows = []
    for name, factory in PRESETS.items():
        cfg = factory()
        p = cfg.params
        state = cfg.initial_state
        rows.append(
            [
                name,
                p.modulation.value,
                format_number(p.n_particles),
                format_number(p.omega),
                format_number(p.epsilon1),
                format_number(p.delta0),
                format_number(p.delta1),
                format_number(cfg.t_max),
                f"{state.kind}(μ={state.mu:g})",
            ]
        )
    console_table(console=console, title="Figure Presets", columns=columns, rows=rows)
