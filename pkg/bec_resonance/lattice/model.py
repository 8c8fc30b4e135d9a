import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from bec_resonance.util.errors import DomainError
from bec_resonance.util.model import ArrayModel

DEFAULT_MAX_DIMENSION = 200_000
NORM_TOLERANCE = 1e-10


class LatticeParams(BaseModel):
    """
    Tilted Bose-Hubbard chain with open ends.

    H = −(δ/2)Σₗ(a†ₗ₊₁aₗ + h.c.) + (κ/2)Σₗ nₗ(nₗ−1) + ε(t)Σₗ l·nₗ,
    ε(t) = ε0 + ε1 cos ωt, sites l = 0..L−1 from the left edge.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_sites: int = Field(ge=2)
    n_particles: int = Field(ge=1)
    kappa: float = 1.0
    delta: float = 0.0
    epsilon0: float = 0.0
    epsilon1: float = 0.0
    omega: float = 0.0
    max_dimension: int = Field(default=DEFAULT_MAX_DIMENSION, ge=1)

    @model_validator(mode="after")
    def _verify_modulation(self) -> "LatticeParams":
        if self.epsilon1 != 0 and self.omega <= 0:
            raise ValueError("A modulated tilt needs omega > 0.")
        return self

    @property
    def dimension(self) -> int:
        return math.comb(self.n_particles + self.n_sites - 1, self.n_sites - 1)

    @property
    def modulated(self) -> bool:
        return self.epsilon1 != 0

    def epsilon_at(self, t: float) -> float:
        return self.epsilon0 + self.epsilon1 * np.cos(self.omega * t)

    def theta(self, t: float) -> float:
        if not self.modulated:
            return self.epsilon0 * t
        return self.epsilon0 * t + self.epsilon1 * np.sin(self.omega * t) / self.omega

    @property
    def bessel_argument(self) -> float:
        return self.epsilon1 / self.omega if self.modulated else 0.0


class LatticeBasis(ArrayModel):
    """Occupation vectors (N₀..N_{L−1}) in ascending lexicographic order."""

    occupations: np.ndarray

    _lookup: dict[tuple[int, ...], int] = PrivateAttr(default_factory=dict)

    @field_validator("occupations", mode="before")
    @classmethod
    def _as_occupation_table(cls, value) -> np.ndarray:
        occupations = np.array(value, dtype=np.int64, copy=True)
        if occupations.ndim != 2:
            raise ValueError("Occupations must form a two-dimensional table.")
        occupations.setflags(write=False)
        return occupations

    def model_post_init(self, __context) -> None:
        self._lookup = {tuple(int(n) for n in row): i for i, row in enumerate(self.occupations)}

    @property
    def dimension(self) -> int:
        return self.occupations.shape[0]

    @property
    def n_sites(self) -> int:
        return self.occupations.shape[1]

    @property
    def n_particles(self) -> int:
        return int(self.occupations[0].sum())

    def index_of(self, occupation) -> int:
        key = tuple(int(n) for n in occupation)
        if key not in self._lookup:
            raise DomainError(f"Occupation {key} is not part of the basis.")
        return self._lookup[key]


class HopTable(ArrayModel):
    """
    Nonzero elements of Σₗ a†ₗ₊₁aₗ.

    Entry k moves one atom from site l (p atoms before the hop) to site l+1
    (q atoms before the hop): row is the target state, col the source state,
    value √((q+1)p) and shift q − p + 1.
    """

    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    shifts: np.ndarray


class LatticeState(ArrayModel):
    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_complex_vector(cls, value) -> np.ndarray:
        amplitudes = np.array(value, dtype=np.complex128, copy=True)
        amplitudes.setflags(write=False)
        return amplitudes

    @model_validator(mode="after")
    def _verify_norm(self) -> "LatticeState":
        if abs(np.linalg.norm(self.amplitudes) - 1.0) > NORM_TOLERANCE:
            raise ValueError("Lattice state is not normalized.")
        return self


class SiteObservables(ArrayModel):
    mean: np.ndarray
    variance: np.ndarray
