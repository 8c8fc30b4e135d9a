from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from bec_resonance.algebra.core import operator_entries, rotation_operator
from bec_resonance.algebra.model import OperatorKind
from bec_resonance.util.model import ArrayModel


class Modulation(Enum):
    ENERGY_DIFFERENCE = "energy_difference"
    COUPLING = "coupling"
    NONE = "none"


class Frame(Enum):
    ENERGY = "energy"
    COUPLING = "coupling"


class TwoWellParams(BaseModel):
    """
    Physical parameters of the N-particle two-well Hamiltonian.

    All rates are angular frequencies in a common unit (ħ = 1). The energy
    asymmetry is ε(t) = ε0 + ε1 cos ωt, the coupling δ(t) = δ0 + δ1 cos ωt;
    only one of the two is modulated at a time.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_particles: int = Field(ge=1)
    kappa: float = 1.0
    epsilon0: float = 0.0
    epsilon1: float = 0.0
    delta0: float = 0.0
    delta1: float = 0.0
    omega: float = 0.0
    modulation: Modulation = Modulation.NONE

    @model_validator(mode="after")
    def _verify_modulation(self) -> "TwoWellParams":
        if self.modulation != Modulation.NONE and self.omega <= 0:
            raise ValueError("A modulated system needs omega > 0.")

        if self.modulation == Modulation.COUPLING:
            if not self.delta0 >= self.delta1 >= 0:
                raise ValueError("Coupling modulation requires delta0 >= delta1 >= 0.")
            if self.epsilon1 != 0:
                raise ValueError("Coupling modulation cannot be combined with epsilon1.")
        elif self.modulation == Modulation.ENERGY_DIFFERENCE:
            if self.delta1 != 0:
                raise ValueError("Energy modulation cannot be combined with delta1.")
        elif self.epsilon1 != 0 or self.delta1 != 0:
            raise ValueError("Unmodulated systems must have epsilon1 = delta1 = 0.")
        return self

    @property
    def j(self) -> float:
        return self.n_particles / 2

    def epsilon_at(self, t: float) -> float:
        return self.epsilon0 + self.epsilon1 * np.cos(self.omega * t)

    def delta_at(self, t: float) -> float:
        return self.delta0 + self.delta1 * np.cos(self.omega * t)

    def theta(self, t: float) -> float:
        """Integrated asymmetry θ(t) = ε0·t + ε1·sin(ωt)/ω."""
        if self.epsilon1 == 0:
            return self.epsilon0 * t
        return self.epsilon0 * t + self.epsilon1 * np.sin(self.omega * t) / self.omega

    def eta(self, t: float) -> float:
        """Integrated coupling η(t) = δ0·t + δ1·sin(ωt)/ω."""
        if self.delta1 == 0:
            return self.delta0 * t
        return self.delta0 * t + self.delta1 * np.sin(self.omega * t) / self.omega

    @property
    def bessel_argument(self) -> float:
        """Modulation index of the sideband expansion: ε1/ω or 2δ1/ω."""
        if self.modulation == Modulation.ENERGY_DIFFERENCE:
            return self.epsilon1 / self.omega
        elif self.modulation == Modulation.COUPLING:
            return 2 * self.delta1 / self.omega
        return 0.0


class TwoWellHamiltonian(ArrayModel):
    """Lab-frame evaluator H(t) = ε(t)Jz − δ(t)Jx + κJz²."""

    params: TwoWellParams

    _jz: np.ndarray = PrivateAttr()
    _jx: np.ndarray = PrivateAttr()
    _jz2: np.ndarray = PrivateAttr()

    def model_post_init(self, __context) -> None:
        j = self.params.j
        self._jz = operator_entries(j, OperatorKind.JZ)
        self._jx = operator_entries(j, OperatorKind.JX)
        self._jz2 = operator_entries(j, OperatorKind.JZ2)

    def __call__(self, t: float) -> np.ndarray:
        p = self.params
        return p.epsilon_at(t) * self._jz - p.delta_at(t) * self._jx + p.kappa * self._jz2


class XFormHamiltonian(ArrayModel):
    """
    Evaluator of the Jx-basis form
    −δ(t)Jx + (κ/2)(J(J+1) − Jx²) + (κ/4)(Jx⁺² + Jx⁻²), valid for ε = 0.
    """

    params: TwoWellParams

    _jx: np.ndarray = PrivateAttr()
    _static: np.ndarray = PrivateAttr()

    def model_post_init(self, __context) -> None:
        p = self.params
        j = p.j
        jx = operator_entries(j, OperatorKind.JX)
        jx_plus = operator_entries(j, OperatorKind.JX_PLUS)
        jx_minus = operator_entries(j, OperatorKind.JX_MINUS)

        static = (p.kappa / 2) * (j * (j + 1) * np.eye(jx.shape[0]) - jx @ jx) + (
            p.kappa / 4
        ) * (jx_plus @ jx_plus + jx_minus @ jx_minus)
        self._jx = jx
        self._static = (static + static.conj().T) / 2

    def __call__(self, t: float) -> np.ndarray:
        return -self.params.delta_at(t) * self._jx + self._static


class SidebandHamiltonian(ArrayModel):
    """
    Interaction-picture Hamiltonian written as a sum over harmonics n.

    Energy modulation (frame T):
        −(δ0/2) Σn Jn(ε1/ω) [J₊ e^{it(κ(2Jz+1) + nω + ε0)} + h.c.]
    Coupling modulation (frame S), in the Jx eigenbasis:
        (κ/4) Σn Jn(2δ1/ω) [Jx⁺² e^{−it(2δ0 + 2κ(Jx+1) + nω)} + h.c.]

    With `exact` set, the harmonic sum is replaced by its closed form
    e^{±i(arg)sin ωt}, which is the untruncated transformed Hamiltonian.
    Matrices are returned in the number basis.
    """

    params: TwoWellParams
    frame: Frame
    n_max: int = Field(ge=0)
    weights: np.ndarray
    exact: bool = False

    _raise: np.ndarray = PrivateAttr()
    _mu: np.ndarray = PrivateAttr()
    _x_basis: np.ndarray | None = PrivateAttr(default=None)

    def model_post_init(self, __context) -> None:
        j = self.params.j
        jp = operator_entries(j, OperatorKind.JPLUS)
        self._mu = np.arange(jp.shape[0]) - j
        if self.frame == Frame.ENERGY:
            self._raise = jp
        else:
            # Jx⁺ in its own eigenbasis is the ordinary J₊
            self._raise = jp @ jp
            self._x_basis = rotation_operator(j, np.pi / 2, 0.0).entries

    @property
    def harmonics(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    @property
    def weight_mass(self) -> float:
        return float(np.sum(self.weights**2))

    @property
    def _sign(self) -> int:
        return 1 if self.frame == Frame.ENERGY else -1

    def _carrier(self, t: float) -> np.ndarray:
        p = self.params
        if self.frame == Frame.ENERGY:
            return np.exp(1j * t * (p.kappa * (2 * self._mu + 1) + p.epsilon0))
        return np.exp(-1j * t * (2 * p.delta0 + 2 * p.kappa * (self._mu + 1)))

    def modulation_factor(self, t: float) -> complex:
        p = self.params
        if self.exact:
            return complex(np.exp(self._sign * 1j * p.bessel_argument * np.sin(p.omega * t)))
        phases = np.exp(self._sign * 1j * self.harmonics * p.omega * t)
        return complex(np.sum(self.weights * phases))

    def _assemble(self, diagonal: np.ndarray) -> np.ndarray:
        p = self.params
        upper = self._raise * diagonal[np.newaxis, :]
        if self.frame == Frame.ENERGY:
            return -(p.delta0 / 2) * (upper + upper.conj().T)

        h_x = (p.kappa / 4) * (upper + upper.conj().T)
        return self._x_basis @ h_x @ self._x_basis.conj().T

    def term(self, n: int, t: float) -> np.ndarray:
        """Contribution of the single harmonic n."""

        if abs(n) > self.n_max:
            return np.zeros_like(self._raise)
        weight = self.weights[n + self.n_max]
        phase = np.exp(self._sign * 1j * n * self.params.omega * t)
        return self._assemble(self._carrier(t) * weight * phase)

    def __call__(self, t: float) -> np.ndarray:
        return self._assemble(self._carrier(t) * self.modulation_factor(t))
