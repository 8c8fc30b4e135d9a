import numpy as np
import polars as pl
import pytest
from pydantic import ValidationError

from bec_resonance.algebra.core import rotation_operator
from bec_resonance.hamiltonian.model import Modulation, TwoWellHamiltonian, TwoWellParams
from bec_resonance.observables.core import (
    first_maximum_frequency,
    measure_number_basis,
    measure_x_basis,
    trajectory_timeseries,
)
from bec_resonance.observables.model import JZ_CHANNELS, TimeSeries
from bec_resonance.propagation.core import evolve
from bec_resonance.propagation.model import Trajectory
from bec_resonance.states.core import coherent_family, number_state
from bec_resonance.states.model import PhaseState, SpinCoherent, StateVector, XBasisState
from bec_resonance.util.errors import ContractError, DomainError
from bec_resonance.util.testing import random_state


class TestNumberBasis:
    """Populations and Jz moments."""

    def test_number_state(self):
        """A number state is sharp."""
        measurement = measure_number_basis(number_state(8, 3))
        assert measurement.populations[11] == 1
        assert measurement.jz_mean == 3
        assert measurement.jz_var == 0
        assert measurement.jz2_mean == 9
        assert measurement.left_well_atoms == 11

    def test_phase_state_moments(self):
        """PS at N=16 has <Jz> = 0 and variance J/2 = 4."""
        measurement = measure_number_basis(coherent_family(8, PhaseState(phi=1.3)))
        assert abs(measurement.jz_mean) < 1e-12
        assert abs(measurement.jz_var - 4) < 1e-10

    @pytest.mark.parametrize("theta", [0.0, 0.7, 2.1, np.pi])
    def test_spin_coherent_mean(self, theta):
        """<Jz> = J cos θ, variance (J/2) sin²θ."""
        measurement = measure_number_basis(coherent_family(6, SpinCoherent(theta=theta, phi=0.2)))
        assert abs(measurement.jz_mean - 6 * np.cos(theta)) < 1e-10
        assert abs(measurement.jz_var - 3 * np.sin(theta) ** 2) < 1e-10

    def test_populations_sum_to_one(self):
        """Probabilities are complete."""
        measurement = measure_number_basis(random_state(5.5, np.random.default_rng(3)))
        assert abs(measurement.populations.sum() - 1) < 1e-12
        assert measurement.jz_var >= 0


class TestXBasis:
    """Populations in the Jx eigenbasis."""

    def test_x_basis_state(self):
        """|J-2>_x is found at μ = J-2 only."""
        populations = measure_x_basis(coherent_family(4, XBasisState(mu=2)))
        assert abs(populations[6] - 1) < 1e-12

    def test_phase_state_zero(self):
        """PS(φ=0) is the top Jx eigenstate."""
        populations = measure_x_basis(coherent_family(8, PhaseState(phi=0.0)))
        assert abs(populations[-1] - 1) < 1e-12

    def test_completeness(self):
        """x-basis populations sum to one."""
        populations = measure_x_basis(random_state(7, np.random.default_rng(4)))
        assert abs(populations.sum() - 1) < 1e-12

    def test_consistent_with_rotated_number_basis(self):
        """P^x(ψ) equals the number-basis populations of R†ψ."""
        psi = random_state(3.5, np.random.default_rng(6))
        rotation = rotation_operator(3.5, np.pi / 2, 0.0).entries
        rotated = StateVector(j=3.5, amplitudes=rotation.conj().T @ psi.amplitudes)
        assert np.allclose(measure_number_basis(rotated).populations, measure_x_basis(psi))


class TestTimeSeries:
    """Tabulated trajectories."""

    @pytest.fixture
    def trajectory(self) -> Trajectory:
        p = TwoWellParams(
            n_particles=6, kappa=1.0, delta0=0.5, epsilon1=2.0, omega=1.5,
            modulation=Modulation.ENERGY_DIFFERENCE,
        )
        return evolve(TwoWellHamiltonian(params=p), number_state(3, -3), np.linspace(0, 5, 26))

    def test_columns(self, trajectory):
        """Time, seven populations and the Jz moments."""
        series = trajectory_timeseries(trajectory)
        assert series.frame.columns[0] == "t"
        assert series.population_channels == [f"P_mu[{mu}]" for mu in range(-3, 4)]
        assert all(name in series.frame.columns for name in JZ_CHANNELS)
        assert series.frame.height == 26

    def test_x_basis_columns(self, trajectory):
        """x-basis channels are optional."""
        series = trajectory_timeseries(trajectory, x_basis=True)
        assert "Px_mu[3]" in series.frame.columns
        x_total = series.frame.select(pl.sum_horizontal(pl.col("^Px_mu.*$"))).to_series()
        assert float((x_total - 1).abs().max()) < 1e-9

    def test_time_scale(self, trajectory):
        """Times are multiplied by the scale factor."""
        series = trajectory_timeseries(trajectory, time_scale=2.0)
        assert series.times[-1] == 10.0

    def test_left_well_within_bounds(self, trajectory):
        """Atoms in well 1 stay within [0, N]."""
        series = trajectory_timeseries(trajectory)
        left = series.channel("jz_mean") + 3
        assert np.all((left >= -1e-12) & (left <= 6 + 1e-12))

    def test_lattice_trajectory_rejected(self):
        """Only trajectories with J can be tabulated."""
        trajectory = Trajectory(times=[0.0], amplitudes=[[1, 0, 0]])
        with pytest.raises(ContractError):
            trajectory_timeseries(trajectory)

    def test_population_sum_validated(self):
        """A frame whose populations do not sum to one is rejected."""
        frame = pl.DataFrame({"t": [0.0], "P_mu[0]": [0.5]})
        with pytest.raises(ValidationError):
            TimeSeries(frame=frame)

    def test_negative_variance_rejected(self):
        """Variance below the rounding floor is rejected."""
        frame = pl.DataFrame({"t": [0.0], "P_mu[0]": [1.0], "jz_var": [-1e-6]})
        with pytest.raises(ValidationError):
            TimeSeries(frame=frame)


class TestFirstMaximum:
    """Rabi frequency from the first peak."""

    def test_rabi_oscillation(self):
        """sin²(Ωt/2) peaks first at t = π/Ω."""
        times = np.linspace(0, 30, 30001)
        frequency = first_maximum_frequency(times, np.sin(0.7 * times / 2) ** 2)
        assert abs(frequency - 0.7) < 1e-3

    def test_ignores_small_ripples(self):
        """Ripples below half the maximum do not count as the first peak."""
        times = np.linspace(0, 30, 30001)
        values = np.sin(0.7 * times / 2) ** 2 + 0.05 * np.sin(40 * times) ** 2
        assert abs(first_maximum_frequency(times, values) - 0.7) < 0.05

    def test_flat_series(self):
        """No peak, no frequency."""
        with pytest.raises(DomainError):
            first_maximum_frequency(np.linspace(0, 1, 11), np.ones(11))
