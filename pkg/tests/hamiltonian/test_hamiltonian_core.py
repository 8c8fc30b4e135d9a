import numpy as np
import pytest
from pydantic import ValidationError

from bec_resonance.algebra.core import mu_values, operator_entries, rotation_operator
from bec_resonance.algebra.model import OperatorKind
from bec_resonance.hamiltonian.core import (
    frame_transform,
    hamiltonian_at,
    sideband_hamiltonian,
    to_lab_frame,
    transformed_hamiltonian,
    x_form_hamiltonian,
)
from bec_resonance.hamiltonian.model import Frame, Modulation, TwoWellHamiltonian, TwoWellParams
from bec_resonance.propagation.core import evolve
from bec_resonance.resonance.bessel import bessel_j
from bec_resonance.states.core import fidelity, number_state
from bec_resonance.util.errors import ContractError, TruncationError
from bec_resonance.util.testing import random_state


@pytest.fixture
def fig1_params():
    return TwoWellParams(
        n_particles=16,
        kappa=1.0,
        delta0=0.25,
        epsilon1=14.0,
        omega=3.0,
        modulation=Modulation.ENERGY_DIFFERENCE,
    )


@pytest.fixture
def fig4_params():
    return TwoWellParams(
        n_particles=14,
        kappa=1.0,
        delta0=16.0,
        delta1=14.0,
        omega=20.0,
        modulation=Modulation.COUPLING,
    )


class TestParams:
    """Validation of TwoWellParams."""

    def test_needs_particles(self):
        """N >= 1."""
        with pytest.raises(ValidationError):
            TwoWellParams(n_particles=0)

    def test_modulation_needs_omega(self):
        """ω > 0 when modulated."""
        with pytest.raises(ValidationError):
            TwoWellParams(n_particles=2, epsilon1=1.0, modulation=Modulation.ENERGY_DIFFERENCE)

    def test_coupling_stays_positive(self):
        """δ0 >= δ1 >= 0 for coupling modulation."""
        with pytest.raises(ValidationError):
            TwoWellParams(
                n_particles=2, delta0=1.0, delta1=2.0, omega=1.0, modulation=Modulation.COUPLING
            )

    def test_no_simultaneous_modulation(self):
        """ε and δ are never modulated together."""
        with pytest.raises(ValidationError):
            TwoWellParams(
                n_particles=2,
                epsilon1=1.0,
                delta1=0.5,
                delta0=1.0,
                omega=1.0,
                modulation=Modulation.COUPLING,
            )

    def test_unknown_keys_rejected(self):
        """Parameter records fail closed."""
        with pytest.raises(ValidationError):
            TwoWellParams.model_validate({"n_particles": 2, "gamma": 1.0})

    def test_integrated_phases(self, fig1_params):
        """θ(t) = ε0 t + ε1 sin(ωt)/ω."""
        t = 0.37
        assert fig1_params.theta(t) == pytest.approx(14.0 * np.sin(3.0 * t) / 3.0)


class TestLabHamiltonian:
    """H(t) = ε(t)Jz - δ(t)Jx + κJz²."""

    def test_interaction_only(self):
        """ε = δ = 0 leaves diag(μ²)."""
        h = hamiltonian_at(TwoWellParams(n_particles=6, kappa=1.0), t=2.3)
        assert np.allclose(h.entries, np.diag(mu_values(3) ** 2))

    def test_fig1_diagonal(self, fig1_params):
        """At t = 0 the diagonal is 14μ + μ²."""
        h = hamiltonian_at(fig1_params, 0.0)
        mu = mu_values(8)
        assert np.allclose(np.diag(h.entries).real, 14 * mu + mu**2)

    def test_hermitian_at_random_times(self, fig1_params):
        """Hermitian within 1e-12 at 100 random times."""
        rng = np.random.default_rng(0)
        for t in rng.uniform(0, 50, size=100):
            assert hamiltonian_at(fig1_params, t).hermitian_deviation() < 1e-12


class TestXForm:
    """The Jx-basis rewriting of the Hamiltonian."""

    def test_equals_lab_form(self, fig4_params):
        """Entrywise equality with hamiltonian_at for ε = 0."""
        for t in [0.0, 0.13, 1.7, 9.2]:
            x_form = x_form_hamiltonian(fig4_params, t).entries
            difference = x_form - hamiltonian_at(fig4_params, t).entries
            assert np.max(np.abs(difference)) < 1e-10

    def test_reduces_without_interaction(self):
        """κ = 0 leaves -δ(t)Jx."""
        p = TwoWellParams(
            n_particles=5,
            kappa=0.0,
            delta0=2.0,
            delta1=1.0,
            omega=3.0,
            modulation=Modulation.COUPLING,
        )
        t = 0.4
        expected = -p.delta_at(t) * operator_entries(2.5, OperatorKind.JX)
        assert np.allclose(x_form_hamiltonian(p, t).entries, expected, atol=1e-12)

    def test_couples_only_pairs_two_apart(self, fig4_params):
        """In the Jx eigenbasis only μ ↔ μ±2 are coupled."""
        rotation = rotation_operator(7, np.pi / 2, 0.0).entries
        h_x = rotation.conj().T @ x_form_hamiltonian(fig4_params, 0.8).entries @ rotation
        distance = np.abs(np.subtract.outer(np.arange(15), np.arange(15)))
        assert np.max(np.abs(h_x[(distance != 0) & (distance != 2)])) < 1e-10
        assert np.max(np.abs(h_x[distance == 2])) > 1.0

    def test_requires_equal_wells(self):
        """The Jx form is derived for ε = 0."""
        p = TwoWellParams(n_particles=4, epsilon0=0.5, delta0=1.0)
        with pytest.raises(ContractError):
            x_form_hamiltonian(p, 0.0)


class TestFrameTransform:
    """Interaction-picture unitaries T(t) and S(t)."""

    def test_identity_at_zero(self, fig1_params, fig4_params):
        """T(0) = S(0) = 1."""
        assert np.allclose(frame_transform(fig1_params, 0.0, Frame.ENERGY).entries, np.eye(17))
        assert np.allclose(frame_transform(fig4_params, 0.0, Frame.COUPLING).entries, np.eye(15))

    def test_energy_frame_after_one_period(self, fig1_params):
        """θ(2π/ω) = 0 leaves exp(-iκ(2π/ω)Jz²)."""
        period = 2 * np.pi / fig1_params.omega
        expected = np.diag(np.exp(-1j * period * mu_values(8) ** 2))
        assert np.allclose(frame_transform(fig1_params, period, Frame.ENERGY).entries, expected)

    def test_unitary_at_random_times(self, fig4_params):
        """Coupling frame unitaries pass the 1e-10 unitarity check."""
        for t in np.random.default_rng(1).uniform(0, 20, size=10):
            assert frame_transform(fig4_params, t, Frame.COUPLING).unitary_deviation() < 1e-10

    def test_mismatch_rejected(self, fig1_params, fig4_params):
        """Frame and modulation must agree."""
        with pytest.raises(ContractError):
            frame_transform(fig1_params, 1.0, Frame.COUPLING)
        with pytest.raises(ContractError):
            frame_transform(fig4_params, 1.0, Frame.ENERGY)

    def test_coupling_frame_requires_equal_wells(self):
        """Ŝ(t) only removes the drive when ε0 = 0."""
        p = TwoWellParams(
            n_particles=4,
            epsilon0=0.5,
            delta0=1.0,
            delta1=0.5,
            omega=2.0,
            modulation=Modulation.COUPLING,
        )
        with pytest.raises(ContractError):
            frame_transform(p, 1.0, Frame.COUPLING)
        with pytest.raises(ContractError):
            sideband_hamiltonian(p, exact=True)


class TestSidebands:
    """Truncated and exact transformed Hamiltonians."""

    def test_unmodulated_amplitude_has_single_term(self):
        """ε1 = 0 and n_max = 0 reproduce the exact transformed Hamiltonian."""
        p = TwoWellParams(
            n_particles=6,
            delta0=0.7,
            epsilon0=0.3,
            omega=2.0,
            modulation=Modulation.ENERGY_DIFFERENCE,
        )
        truncated = sideband_hamiltonian(p, n_max=0)
        exact = sideband_hamiltonian(p, exact=True)
        for t in [0.0, 0.9, 3.3]:
            assert np.allclose(truncated(t), exact(t), atol=1e-13)

    def test_hermitian_at_random_times(self, fig1_params, fig4_params):
        """Truncated sums stay Hermitian within 1e-12."""
        for p in (fig1_params, fig4_params):
            for t in np.random.default_rng(2).uniform(0, 30, size=20):
                h = transformed_hamiltonian(p, t)
                assert h.hermitian_deviation() < 1e-12 * max(1.0, np.max(np.abs(h.entries)))

    def test_terms_sum_to_total(self, fig1_params):
        """Σn term(n, t) equals the truncated Hamiltonian."""
        evaluator = sideband_hamiltonian(fig1_params, n_max=16)
        t = 1.3
        total = sum(evaluator.term(n, t) for n in evaluator.harmonics)
        assert np.allclose(total, evaluator(t), atol=1e-12)

    def test_default_truncation_close_to_exact(self, fig1_params):
        """The default n_max agrees with the closed form."""
        truncated = sideband_hamiltonian(fig1_params)
        exact = sideband_hamiltonian(fig1_params, exact=True)
        assert truncated.n_max == 13
        assert np.max(np.abs(truncated(2.2) - exact(2.2))) < 1e-4

    def test_weight_mass_check(self, fig1_params):
        """Too few harmonics raise unless strict is off."""
        with pytest.raises(TruncationError):
            sideband_hamiltonian(fig1_params, n_max=1)
        assert sideband_hamiltonian(fig1_params, n_max=1, strict=False).weight_mass < 0.999

    def test_unmodulated_has_no_frame(self):
        """Only modulated systems have a transformed Hamiltonian."""
        with pytest.raises(ContractError):
            sideband_hamiltonian(TwoWellParams(n_particles=2, delta0=1.0))


class TestFrameEquivalence:
    """Lab-frame and transformed-frame dynamics describe the same state."""

    def test_energy_frame_populations(self):
        """Populations agree within 1e-6 with the exact transformed phases."""
        p = TwoWellParams(
            n_particles=6, kappa=1.0, epsilon0=0.4, epsilon1=5.0, delta0=1.2, omega=2.5,
            modulation=Modulation.ENERGY_DIFFERENCE,
        )
        psi0 = random_state(3, np.random.default_rng(4))
        times = np.linspace(0, 6, 31)
        lab = evolve(TwoWellHamiltonian(params=p), psi0, times)
        transformed = evolve(sideband_hamiltonian(p, exact=True), psi0, times)
        deviation = np.abs(np.abs(lab.amplitudes) ** 2 - np.abs(transformed.amplitudes) ** 2)
        assert np.max(deviation) < 1e-6

    def test_coupling_frame_states(self):
        """S(t)ψ'' reproduces the lab-frame state."""
        p = TwoWellParams(
            n_particles=6, kappa=1.0, delta0=3.0, delta1=2.0, omega=5.0,
            modulation=Modulation.COUPLING,
        )
        psi0 = number_state(3, -3)
        times = np.linspace(0, 3, 7)
        lab = evolve(TwoWellHamiltonian(params=p), psi0, times)
        transformed = evolve(sideband_hamiltonian(p, exact=True), psi0, times)
        for index, t in enumerate(times):
            mapped = to_lab_frame(p, t, transformed.state_at(index))
            assert fidelity(mapped, lab.state_at(index)) > 1 - 1e-8

    def test_high_frequency_limit(self):
        """For ω ≫ κ(2J+1), ε1 the coupling is rescaled by J0(ε1/ω)."""
        driven = TwoWellParams(
            n_particles=4, kappa=1.0, delta0=1.0, epsilon1=20.0, omega=200.0,
            modulation=Modulation.ENERGY_DIFFERENCE,
        )
        static = TwoWellParams(n_particles=4, kappa=1.0, delta0=bessel_j(0, 0.1))
        psi0 = number_state(2, -2)
        times = np.linspace(0, 20 * np.pi, 41)

        exact = evolve(sideband_hamiltonian(driven, exact=True), psi0, times, tol=1e-9)
        central = evolve(sideband_hamiltonian(driven, n_max=0, strict=False), psi0, times, tol=1e-9)
        rescaled = evolve(TwoWellHamiltonian(params=static), psi0, times, tol=1e-9)

        assert fidelity(exact.state_at(-1), central.state_at(-1)) > 0.99
        populations_exact = np.abs(exact.amplitudes) ** 2
        populations_rescaled = np.abs(rescaled.amplitudes) ** 2
        assert np.max(np.abs(populations_exact - populations_rescaled)) < 0.01
