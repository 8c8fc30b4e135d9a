from enum import Enum

import numpy as np
from pydantic import Field, field_validator, model_validator

from bec_resonance.util.errors import DomainError
from bec_resonance.util.model import ArrayModel

HERMITIAN_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-10


class OperatorKind(Enum):
    JZ = "Jz"
    JPLUS = "Jplus"
    JMINUS = "Jminus"
    JX = "Jx"
    JY = "Jy"
    JX_PLUS = "JxPlus"
    JX_MINUS = "JxMinus"
    JY_PLUS = "JyPlus"
    JY_MINUS = "JyMinus"
    JZ2 = "Jz2"


HERMITIAN_KINDS = {OperatorKind.JZ, OperatorKind.JX, OperatorKind.JY, OperatorKind.JZ2}


def two_j_of(j: float) -> int:
    """Return 2J, rejecting negative or non half-integer J."""

    two_j = round(2 * j)
    if j < 0 or abs(2 * j - two_j) > 1e-12:
        raise DomainError(f"J must be a non-negative half-integer, got {j}.")
    return int(two_j)


class SpinQuantum(ArrayModel):
    """
    Angular-momentum quantum numbers of N bosons shared by two modes.

    The basis index k = 0..N maps to the magnetic number μ = k − J, so
    index 0 holds all atoms in well 2 and index N all atoms in well 1.
    """

    n_particles: int = Field(ge=0)

    @classmethod
    def from_j(cls, j: float) -> "SpinQuantum":
        return cls(n_particles=two_j_of(j))

    @property
    def j(self) -> float:
        return self.n_particles / 2

    @property
    def dimension(self) -> int:
        return self.n_particles + 1

    @property
    def mu_values(self) -> np.ndarray:
        return np.arange(self.dimension) - self.j

    def index_of(self, mu: float) -> int:
        return int(round(mu + self.j))


class OperatorMatrix(ArrayModel):
    """
    Dense complex square matrix on the (2J+1)-dimensional number basis.

    The hermitian and unitary flags are advisory but verified on construction.
    """

    entries: np.ndarray
    hermitian: bool = False
    unitary: bool = False

    @field_validator("entries", mode="before")
    @classmethod
    def _as_complex_matrix(cls, value) -> np.ndarray:
        entries = np.array(value, dtype=np.complex128, copy=True)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"Operator must be square, got shape {entries.shape}.")
        entries.setflags(write=False)
        return entries

    @model_validator(mode="after")
    def _verify_flags(self) -> "OperatorMatrix":
        if self.hermitian and self.hermitian_deviation() > HERMITIAN_TOLERANCE * max(
            1.0, float(np.max(np.abs(self.entries), initial=0.0))
        ):
            raise ValueError(
                f"Operator flagged Hermitian deviates by {self.hermitian_deviation():.3e}."
            )
        if self.unitary and self.unitary_deviation() > UNITARY_TOLERANCE:
            raise ValueError(
                f"Operator flagged unitary deviates by {self.unitary_deviation():.3e}."
            )
        return self

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermitian_deviation(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def unitary_deviation(self) -> float:
        product = self.entries.conj().T @ self.entries
        return float(np.max(np.abs(product - np.eye(self.dim)), initial=0.0))

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(
            entries=self.entries.conj().T, hermitian=self.hermitian, unitary=self.unitary
        )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(
            entries=self.entries @ other.entries,
            unitary=self.unitary and other.unitary,
        )
