from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from bec_resonance.algebra.model import two_j_of
from bec_resonance.util.model import ArrayModel

NORM_TOLERANCE = 1e-10


class StateVector(ArrayModel):
    """
    Pure state of N = 2J bosons in two wells, amplitudes indexed by μ = −J..J.
    """

    j: float
    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_complex_vector(cls, value) -> np.ndarray:
        amplitudes = np.array(value, dtype=np.complex128, copy=True)
        if amplitudes.ndim != 1:
            raise ValueError(f"Amplitudes must be one-dimensional, got {amplitudes.shape}.")
        amplitudes.setflags(write=False)
        return amplitudes

    @model_validator(mode="after")
    def _verify_shape_and_norm(self) -> "StateVector":
        if self.amplitudes.shape[0] != two_j_of(self.j) + 1:
            raise ValueError(
                f"J={self.j} requires {two_j_of(self.j) + 1} amplitudes, "
                f"got {self.amplitudes.shape[0]}."
            )
        if abs(self.norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"State is not normalized, norm={self.norm!r}.")
        return self

    @property
    def n_particles(self) -> int:
        return two_j_of(self.j)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def mu_values(self) -> np.ndarray:
        return np.arange(self.dimension) - self.j

    def with_global_phase(self, alpha: float) -> "StateVector":
        return StateVector(j=self.j, amplitudes=np.exp(1j * alpha) * self.amplitudes)


class StateFamilyModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class NumberState(StateFamilyModel):
    """Fock state |μ⟩ with J+μ atoms in well 1."""

    kind: Literal["number"] = "number"
    mu: float


class SpinCoherent(StateFamilyModel):
    """SCS |θ,φ;J⟩ = R(θ,φ)|J⟩."""

    kind: Literal["scs"] = "scs"
    theta: float
    phi: float


class PhaseState(StateFamilyModel):
    """PS |φ;J⟩, the SCS at θ = π/2."""

    kind: Literal["ps"] = "ps"
    phi: float


class DisplacedSpinCoherent(StateFamilyModel):
    """DSCS |θ,φ;μ⟩ = R(θ,φ)|μ⟩."""

    kind: Literal["dscs"] = "dscs"
    theta: float
    phi: float
    mu: float


class XBasisState(StateFamilyModel):
    """Eigenstate |μ⟩_x of Jx."""

    kind: Literal["xbasis"] = "xbasis"
    mu: float


class YBasisState(StateFamilyModel):
    """Eigenstate |μ⟩_y of Jy."""

    kind: Literal["ybasis"] = "ybasis"
    mu: float


CoherentKind = Annotated[
    SpinCoherent | PhaseState | DisplacedSpinCoherent | XBasisState | YBasisState,
    Field(discriminator="kind"),
]

StateDescriptor = Annotated[
    NumberState
    | SpinCoherent
    | PhaseState
    | DisplacedSpinCoherent
    | XBasisState
    | YBasisState,
    Field(discriminator="kind"),
]
