"""Main CLI application for bec-resonance."""

import typer
from bec_resonance.cli.run import run_command
from bec_resonance.cli.scan import scan_command
from bec_resonance.cli.lattice import lattice_command
from bec_resonance.cli.presets import presets_command

app = typer.Typer(
    name="bec-resonance",
    help="Simulate resonances of a driven two-well condensate and a tilted lattice.",
    no_args_is_help=True,
)

# Add subcommands
app.command("run")(run_command)
app.command("scan")(scan_command)
app.command("lattice")(lattice_command)
app.command("presets")(presets_command)

# Export for entry point
__all__ = ["app"]

if __name__ == "__main__":
    app()
