import math
from enum import Enum
from pathlib import Path
from typing import Any, Literal

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, Field, model_validator

from bec_resonance.hamiltonian.model import Modulation, TwoWellParams
from bec_resonance.lattice.model import LatticeParams
from bec_resonance.resonance.model import FrequencySearch
from bec_resonance.states.model import StateDescriptor
from bec_resonance.util.model import ArrayModel, ChannelStatistics

DEFAULT_TOLERANCE = 1e-10


class IntegrationFrame(Enum):
    LAB = "lab"
    TRANSFORMED = "transformed"


class ConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TimeGrid(ConfigModel):
    t_max: float = Field(gt=0)
    output_step: float = Field(gt=0)

    @model_validator(mode="after")
    def _verify_step(self) -> "TimeGrid":
        if self.output_step > self.t_max:
            raise ValueError("output_step must not exceed t_max.")
        return self

    @property
    def times(self) -> np.ndarray:
        """Multiples of `output_step` up to and always ending on `t_max`."""

        steps = math.floor(self.t_max / self.output_step + 1e-9)
        grid = self.output_step * np.arange(steps + 1)
        if self.t_max - grid[-1] <= 1e-9 * self.output_step:
            grid[-1] = self.t_max
            return grid
        return np.append(grid, self.t_max)


class ResonanceSearchConfig(ConfigModel):
    """Report the ω within ±span of the configured one closest to resonance."""

    mu: float
    span: float = Field(default=0.2, gt=0, lt=1)


class ExperimentConfig(TimeGrid):
    """
    A two-well run. `n_max` selects a truncated sideband expansion when the
    transformed frame is used; left empty the exact transformed phases are
    integrated.
    """

    name: str = "experiment"
    preset: str | None = None
    params: TwoWellParams
    initial_state: StateDescriptor
    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0)
    n_max: int | None = Field(default=None, ge=0)
    frame: IntegrationFrame = IntegrationFrame.LAB
    measure_x_basis: bool = False
    resonance_search: ResonanceSearchConfig | None = None
    output_dir: str | None = None

    @model_validator(mode="after")
    def _verify_frame(self) -> "ExperimentConfig":
        if self.frame == IntegrationFrame.TRANSFORMED and self.params.modulation == Modulation.NONE:
            raise ValueError("The transformed frame needs a modulated system.")
        return self


class LatticeExperimentConfig(TimeGrid):
    name: str = "lattice"
    preset: str | None = None
    params: LatticeParams
    initial_occupation: list[int]
    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0)
    n_max: int | None = Field(default=None, ge=0)
    frame: IntegrationFrame = IntegrationFrame.LAB
    output_dir: str | None = None

    @model_validator(mode="after")
    def _verify_occupation(self) -> "LatticeExperimentConfig":
        if len(self.initial_occupation) != self.params.n_sites:
            raise ValueError("initial_occupation needs one entry per site.")
        if any(n < 0 for n in self.initial_occupation):
            raise ValueError("Occupations must be non-negative.")
        if sum(self.initial_occupation) != self.params.n_particles:
            raise ValueError("initial_occupation must hold n_particles atoms.")
        if self.frame == IntegrationFrame.TRANSFORMED and not self.params.modulated:
            raise ValueError("The transformed frame needs a modulated tilt.")
        return self


class SweepAxis(ConfigModel):
    parameter: Literal["omega", "epsilon0", "epsilon1", "delta0", "delta1", "kappa"]
    values: list[float]


class ScanConfig(ConfigModel):
    """
    Resonance table over the cartesian product of the sweep axes.

    `twowell` mode enumerates resonances of `params`; `lattice` mode evaluates
    the hop detunings of each occupation pair in `pairs` for `lattice`.
    """

    name: str = "scan"
    mode: Literal["twowell", "lattice"] = "twowell"
    params: TwoWellParams | None = None
    lattice: LatticeParams | None = None
    pairs: list[tuple[int, int]] = [(1, 1)]
    axes: list[SweepAxis]
    n_max: int | None = Field(default=None, ge=0)
    threshold: float = Field(default=0.1, gt=0)
    output_dir: str | None = None

    @model_validator(mode="after")
    def _verify_mode(self) -> "ScanConfig":
        if self.mode == "twowell" and self.params is None:
            raise ValueError("A two-well scan needs params.")
        if self.mode == "lattice" and self.lattice is None:
            raise ValueError("A lattice scan needs lattice params.")
        return self


class RunResult(ArrayModel):
    name: str
    csv_path: Path | None
    metadata_path: Path | None
    frame: pl.DataFrame
    statistics: list[ChannelStatistics]
    metadata: dict[str, Any]
    resonance_search: FrequencySearch | None = None


class ScanResult(ArrayModel):
    name: str
    csv_path: Path | None
    table: pl.DataFrame
    points: int
