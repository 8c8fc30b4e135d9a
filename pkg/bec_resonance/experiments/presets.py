"""Named runs with the parameters of the published figures, in units of κ."""

from typing import Callable

from bec_resonance.experiments.model import (
    ExperimentConfig,
    IntegrationFrame,
    ResonanceSearchConfig,
)
from bec_resonance.hamiltonian.model import Modulation, TwoWellParams
from bec_resonance.states.model import NumberState, XBasisState
from bec_resonance.util.errors import ConfigError

# ε1/ω at zeros of J13, J11 and J7
LOCALIZATION_RATIOS = {"fig3a": 24.26918, "fig3b": 23.2759, "fig3c": 24.93493}


def _energy_modulated(name: str, omega: float, epsilon1: float, t_max: float, step: float):
    return ExperimentConfig(
        name=name,
        preset=name,
        params=TwoWellParams(
            n_particles=16,
            kappa=1.0,
            delta0=0.25,
            epsilon1=epsilon1,
            omega=omega,
            modulation=Modulation.ENERGY_DIFFERENCE,
        ),
        initial_state=NumberState(mu=-8),
        t_max=t_max,
        output_step=step,
        frame=IntegrationFrame.TRANSFORMED,
    )


def fig1() -> ExperimentConfig:
    return _energy_modulated("fig1", omega=3.0, epsilon1=14.0, t_max=100.0, step=0.05)


def fig2a() -> ExperimentConfig:
    return _energy_modulated("fig2a", omega=1.0, epsilon1=14.0, t_max=300.0, step=0.1)


def fig2b() -> ExperimentConfig:
    return _energy_modulated("fig2b", omega=6.0, epsilon1=14.0, t_max=300.0, step=0.1)


def _fig3(name: str) -> Callable[[], ExperimentConfig]:
    def factory() -> ExperimentConfig:
        return _energy_modulated(
            name, omega=1.0, epsilon1=LOCALIZATION_RATIOS[name], t_max=300.0, step=0.1
        )

    return factory


def fig4() -> ExperimentConfig:
    return ExperimentConfig(
        name="fig4",
        preset="fig4",
        params=TwoWellParams(
            n_particles=14,
            kappa=1.0,
            delta0=16.0,
            delta1=14.0,
            omega=20.0,
            modulation=Modulation.COUPLING,
        ),
        initial_state=XBasisState(mu=7),
        t_max=100.0,
        output_step=0.05,
        frame=IntegrationFrame.TRANSFORMED,
        measure_x_basis=True,
        resonance_search=ResonanceSearchConfig(mu=5, span=0.2),
    )


PRESETS: dict[str, Callable[[], ExperimentConfig]] = {
    "fig1": fig1,
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig3a": _fig3("fig3a"),
    "fig3b": _fig3("fig3b"),
    "fig3c": _fig3("fig3c"),
    "fig4": fig4,
}


def preset(name: str) -> ExperimentConfig:
    """
    Resolve a named preset.

    Raises:
        ConfigError: If no preset has that name.
    """

    if name not in PRESETS:
        raise ConfigError(f"Unknown preset '{name}', choose one of {', '.join(PRESETS)}.")
    return PRESETS[name]()
