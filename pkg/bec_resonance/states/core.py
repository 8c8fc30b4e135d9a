import math

import numpy as np
from scipy.special import gammaln

from bec_resonance.algebra.core import rotation_operator
from bec_resonance.algebra.model import two_j_of
from bec_resonance.states.model import (
    CoherentKind,
    DisplacedSpinCoherent,
    NumberState,
    PhaseState,
    SpinCoherent,
    StateDescriptor,
    StateVector,
    XBasisState,
    YBasisState,
)
from bec_resonance.util.errors import DomainError

EXACT_BINOMIAL_LIMIT = 20


def mu_index(j: float, mu: float) -> int:
    """
    Basis index of the magnetic number μ.

    Raises:
        DomainError: If μ is not one of −J, −J+1, ..., J.
    """

    n_particles = two_j_of(j)
    index = round(mu + j)
    if abs(mu + j - index) > 1e-12 or not 0 <= index <= n_particles:
        raise DomainError(f"μ={mu} is not a magnetic number of J={j}.")
    return int(index)


def sqrt_binomials(n_particles: int) -> np.ndarray:
    """
    Square roots of C(N, n) for n = 0..N.

    Beyond N = 20 the coefficients are evaluated through log-gamma so large
    particle numbers neither overflow nor lose the relative precision.
    """

    n = np.arange(n_particles + 1)
    if n_particles <= EXACT_BINOMIAL_LIMIT:
        return np.sqrt([float(math.comb(n_particles, k)) for k in n])

    log_binomial = gammaln(n_particles + 1) - gammaln(n + 1) - gammaln(n_particles - n + 1)
    return np.exp(0.5 * log_binomial)


def number_state(j: float, mu: float) -> StateVector:
    amplitudes = np.zeros(two_j_of(j) + 1, dtype=np.complex128)
    amplitudes[mu_index(j, mu)] = 1.0
    return StateVector(j=j, amplitudes=amplitudes)


def _displaced(j: float, theta: float, phi: float, mu: float) -> StateVector:
    rotation = rotation_operator(j, theta, phi)
    return StateVector(j=j, amplitudes=rotation.entries[:, mu_index(j, mu)])


def coherent_family(j: float, kind: CoherentKind) -> StateVector:
    """
    Build a member of the rotated-state families.

    SCS = R(θ,φ)|J⟩, PS(φ) = SCS(π/2, φ), DSCS = R(θ,φ)|μ⟩, and the x/y
    eigenbases are the DSCS at (π/2, 0) and (π/2, π/2).
    """

    if isinstance(kind, SpinCoherent):
        return _displaced(j, kind.theta, kind.phi, j)
    elif isinstance(kind, PhaseState):
        return _displaced(j, np.pi / 2, kind.phi, j)
    elif isinstance(kind, DisplacedSpinCoherent):
        return _displaced(j, kind.theta, kind.phi, kind.mu)
    elif isinstance(kind, XBasisState):
        return _displaced(j, np.pi / 2, 0.0, kind.mu)
    elif isinstance(kind, YBasisState):
        return _displaced(j, np.pi / 2, np.pi / 2, kind.mu)
    else:
        raise DomainError(f"Unknown state family {kind!r}.")


def prepare_state(j: float, descriptor: StateDescriptor) -> StateVector:
    """Build any configured initial state, number states included."""

    if isinstance(descriptor, NumberState):
        return number_state(j, descriptor.mu)
    return coherent_family(j, descriptor)


def phase_state_amplitudes(j: float, phi: float) -> np.ndarray:
    """Binomial expansion of the phase state |φ;J⟩ over n = μ + J atoms in well 1."""

    n_particles = two_j_of(j)
    n = np.arange(n_particles + 1)
    return sqrt_binomials(n_particles) / 2 ** (n_particles / 2) * np.exp(
        1j * (n_particles - n) * phi
    )


def spin_coherent_amplitudes(j: float, theta: float, phi: float) -> np.ndarray:
    """
    Product form of |θ,φ;J⟩: N atoms in cos(θ/2)|1⟩ + e^{iφ} sin(θ/2)|2⟩.
    """

    n_particles = two_j_of(j)
    n = np.arange(n_particles + 1)
    magnitude = (
        sqrt_binomials(n_particles)
        * np.cos(theta / 2) ** n
        * np.sin(theta / 2) ** (n_particles - n)
    )
    return magnitude * np.exp(1j * (n_particles - n) * phi)


def overlap(a: StateVector, b: StateVector) -> complex:
    if a.dimension != b.dimension:
        raise DomainError(
            f"Cannot compare states of dimension {a.dimension} and {b.dimension}."
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|⟨a|b⟩|², insensitive to global phases."""
    return min(1.0, abs(overlap(a, b)) ** 2)
