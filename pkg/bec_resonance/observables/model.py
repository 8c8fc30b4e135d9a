import numpy as np
import polars as pl
from pydantic import model_validator

from bec_resonance.util.model import ArrayModel

POPULATION_TOLERANCE = 1e-9
VARIANCE_FLOOR = -1e-12

TIME_COLUMN = "t"
JZ_CHANNELS = ("jz_mean", "jz_var", "jz_mean_squared", "jz2_mean")


def population_channel(mu: float) -> str:
    return f"P_mu[{mu:g}]"


def x_population_channel(mu: float) -> str:
    return f"Px_mu[{mu:g}]"


class NumberBasisMeasurement(ArrayModel):
    """
    Number-basis statistics of one state.

    jz_var is the variance ⟨Jz²⟩ − ⟨Jz⟩²; ⟨Jz⟩² and ⟨Jz²⟩ are reported
    alongside it.
    """

    mu_values: np.ndarray
    populations: np.ndarray
    jz_mean: float
    jz_var: float
    jz_mean_squared: float
    jz2_mean: float

    @property
    def n_particles(self) -> int:
        return self.populations.shape[0] - 1

    @property
    def left_well_atoms(self) -> float:
        """Expected number of atoms in well 1, n₁ = ⟨Jz⟩ + N/2."""
        return self.jz_mean + self.n_particles / 2


class TimeSeries(ArrayModel):
    """Per-time channels of a trajectory, one row per output time."""

    frame: pl.DataFrame

    @model_validator(mode="after")
    def _verify_channels(self) -> "TimeSeries":
        populations = [c for c in self.frame.columns if c.startswith("P_mu[")]
        if populations:
            total = self.frame.select(pl.sum_horizontal(populations)).to_series()
            deviation = float((total - 1.0).abs().max())
            if deviation > POPULATION_TOLERANCE:
                raise ValueError(f"Populations do not sum to one, deviation {deviation:.3e}.")
        if "jz_var" in self.frame.columns and float(self.frame["jz_var"].min()) < VARIANCE_FLOOR:
            raise ValueError("Negative Jz variance in time series.")
        return self

    @property
    def times(self) -> np.ndarray:
        return self.frame[TIME_COLUMN].to_numpy()

    @property
    def population_channels(self) -> list[str]:
        return [c for c in self.frame.columns if c.startswith("P_mu[")]

    def channel(self, name: str) -> np.ndarray:
        return self.frame[name].to_numpy()
