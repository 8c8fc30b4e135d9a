import numpy as np

from bec_resonance.hamiltonian.model import Modulation, TwoWellParams
from bec_resonance.states.model import StateVector


def random_state(j: float, rng: np.random.Generator) -> StateVector:
    """Normalized state with Gaussian complex amplitudes."""

    dimension = round(2 * j) + 1
    amplitudes = rng.normal(size=dimension) + 1j * rng.normal(size=dimension)
    return StateVector(j=j, amplitudes=amplitudes / np.linalg.norm(amplitudes))


def random_hermitian(dimension: int, rng: np.random.Generator) -> np.ndarray:
    entries = rng.normal(size=(dimension, dimension)) + 1j * rng.normal(size=(dimension, dimension))
    return (entries + entries.conj().T) / 2


def random_two_well_params(
    rng: np.random.Generator, max_particles: int = 16, max_rate: float = 20.0
) -> TwoWellParams:
    """
    Draw a modulated two-well system with κ = 1 and all other rates in
    [0, max_rate]; energy and coupling modulation are equally likely.
    """

    n_particles = int(rng.integers(1, max_particles + 1))
    omega = float(rng.uniform(0.5, max_rate))

    if rng.random() < 0.5:
        return TwoWellParams(
            n_particles=n_particles,
            kappa=1.0,
            epsilon0=float(rng.uniform(0, max_rate)),
            epsilon1=float(rng.uniform(0, max_rate)),
            delta0=float(rng.uniform(0, max_rate)),
            omega=omega,
            modulation=Modulation.ENERGY_DIFFERENCE,
        )

    delta0 = float(rng.uniform(0, max_rate))
    return TwoWellParams(
        n_particles=n_particles,
        kappa=1.0,
        epsilon0=float(rng.uniform(0, max_rate)),
        delta0=delta0,
        delta1=float(rng.uniform(0, delta0)),
        omega=omega,
        modulation=Modulation.COUPLING,
    )
