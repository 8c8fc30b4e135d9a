from enum import Enum
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from bec_resonance.states.model import StateVector
from bec_resonance.util.model import ArrayModel

TRAJECTORY_NORM_TOLERANCE = 1e-9


class Trajectory(ArrayModel):
    """
    States of one time evolution on an output grid.

    Amplitudes are stored row-wise, one row per output time. `j` is set for
    two-well trajectories and left empty for lattice runs.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    j: float | None = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    @field_validator("times", mode="before")
    @classmethod
    def _as_time_grid(cls, value) -> np.ndarray:
        times = np.array(value, dtype=np.float64, copy=True)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("Trajectory times must be a non-empty sequence.")
        if times[0] != 0:
            raise ValueError(f"Trajectory must start at t=0, got {times[0]}.")
        if np.any(np.diff(times) <= 0):
            raise ValueError("Trajectory times must be strictly increasing.")
        times.setflags(write=False)
        return times

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_amplitude_rows(cls, value) -> np.ndarray:
        amplitudes = np.array(value, dtype=np.complex128, copy=True)
        if amplitudes.ndim != 2:
            raise ValueError(f"Amplitudes must be two-dimensional, got {amplitudes.shape}.")
        amplitudes.setflags(write=False)
        return amplitudes

    @model_validator(mode="after")
    def _verify_rows(self) -> "Trajectory":
        if self.amplitudes.shape[0] != self.times.shape[0]:
            raise ValueError(
                f"{self.times.shape[0]} times but {self.amplitudes.shape[0]} states."
            )
        drift = np.max(np.abs(np.linalg.norm(self.amplitudes, axis=1) - 1.0))
        if drift > TRAJECTORY_NORM_TOLERANCE:
            raise ValueError(f"Trajectory state norms drift by {drift:.3e}.")
        return self

    @property
    def size(self) -> int:
        return self.times.shape[0]

    @property
    def final(self) -> np.ndarray:
        return self.amplitudes[-1]

    def state_at(self, index: int) -> StateVector:
        if self.j is None:
            raise ValueError("Only two-well trajectories carry StateVectors.")
        return StateVector(j=self.j, amplitudes=self.amplitudes[index])

    @property
    def states(self) -> list[StateVector]:
        return [self.state_at(index) for index in range(self.size)]


class LimitModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class CouplingOnly(LimitModel):
    """Pure coupling pulse of area η, propagator exp(iηJx)."""

    kind: Literal["coupling"] = "coupling"
    eta: float


class InteractionOnly(LimitModel):
    """Pure interaction for time t, propagator exp(−iκtJz²)."""

    kind: Literal["interaction"] = "interaction"
    kappa: float
    t: float


AnalyticLimit = Annotated[CouplingOnly | InteractionOnly, Field(discriminator="kind")]


class RevivalFraction(Enum):
    FULL = "full"
    HALF = "half"
    QUARTER = "quarter"

    @property
    def ratio(self) -> float:
        return {"full": 1.0, "half": 0.5, "quarter": 0.25}[self.value]
