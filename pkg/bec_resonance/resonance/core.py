import logging

import numpy as np

from bec_resonance.algebra.core import mu_values
from bec_resonance.hamiltonian.model import Modulation, TwoWellParams
from bec_resonance.resonance.bessel import bessel_j, bessel_zero, default_n_max
from bec_resonance.resonance.model import (
    FrequencySearch,
    LatticeResonance,
    LocalizationPlan,
    ResonanceHit,
)
from bec_resonance.states.core import mu_index
from bec_resonance.util.errors import DomainError

logger = logging.getLogger(__name__)

EXACT_RESONANCE_TOLERANCE = 1e-12
LOCALIZATION_ZEROS = 5


def is_exact(detuning: float, omega: float) -> bool:
    return abs(detuning) <= EXACT_RESONANCE_TOLERANCE * abs(omega)


def _check_modulated(p: TwoWellParams):
    if p.modulation == Modulation.NONE:
        raise DomainError("Resonances need a modulated system.")


def pair_step(p: TwoWellParams) -> int:
    """Distance between the two states of a coupled pair."""

    _check_modulated(p)
    return 2 if p.modulation == Modulation.COUPLING else 1


def static_detuning(p: TwoWellParams, mu: float) -> float:
    """Detuning of the pair with lower state μ before adding nω."""

    _check_modulated(p)
    if p.modulation == Modulation.ENERGY_DIFFERENCE:
        return p.epsilon0 + p.kappa * (2 * mu + 1)
    return 2 * p.delta0 + 2 * p.kappa * (mu + 1)


def detuning(p: TwoWellParams, mu: float, n: int) -> float:
    """
    nω + ε0 + κ(2μ+1) for energy modulation,
    nω + 2δ0 + 2κ(μ+1) for coupling modulation.
    """
    return n * p.omega + static_detuning(p, mu)


def bare_coupling(p: TwoWellParams, mu: float) -> float:
    """
    Ω_μ = δ0√((J−μ)(J+μ+1)) for energy modulation,
    Ω^x_μ = (κ/4)√((J+μ+1)(J+μ+2)(J−μ−1)(J−μ)) for coupling modulation.
    """

    j = p.j
    if pair_step(p) == 1:
        return p.delta0 * np.sqrt((j - mu) * (j + mu + 1))
    return (p.kappa / 4) * np.sqrt((j + mu + 1) * (j + mu + 2) * (j - mu - 1) * (j - mu))


def find_resonances(
    p: TwoWellParams, n_max: int | None = None, threshold: float = 0.1
) -> list[ResonanceHit]:
    """
    Enumerate the exact and near resonances of a modulated two-well system.

    Args:
        p (TwoWellParams): Modulated system parameters.
        n_max (int | None): Highest harmonic considered, defaults to
            ceil(|arg|) + 8.
        threshold (float): Smallest |U| reported for a near resonance.

    Returns:
        list[ResonanceHit]: Sorted by |detuning|, then μ and n.

    Raises:
        DomainError: If the system is unmodulated or threshold ≤ 0.
    """

    _check_modulated(p)
    if not threshold > 0:
        raise DomainError(f"Threshold must be positive, got {threshold}.")

    argument = p.bessel_argument
    if n_max is None:
        n_max = default_n_max(argument)

    step = pair_step(p)
    hits = []
    for mu in mu_values(p.j)[:-step]:
        mu = float(mu)
        coupling = float(bare_coupling(p, mu))
        for n in range(-n_max, n_max + 1):
            delta = detuning(p, mu, n)
            weight = bessel_j(n, argument)
            exact = is_exact(delta, p.omega)
            effective = np.inf if exact else coupling * weight / delta
            if exact or abs(effective) >= threshold:
                hits.append(
                    ResonanceHit(
                        mu=mu,
                        n=n,
                        detuning=delta,
                        bare_coupling=coupling,
                        bessel_weight=weight,
                        effective_coupling=effective,
                        exact=exact,
                    )
                )

    logger.debug("Found %d resonances with |n| <= %d", len(hits), n_max)
    return sorted(hits, key=lambda hit: (abs(hit.detuning), hit.mu, hit.n))


def lattice_resonance(
    p_occ: int, q_occ: int, epsilon0: float, omega: float, kappa: float, n_max: int
) -> list[LatticeResonance]:
    """
    Detunings nω + ε0 + κ(q−p+1) of the hop that moves one atom from a site
    with p atoms to its right neighbour with q atoms, sorted by |detuning|.
    """

    if p_occ < 0 or q_occ < 0:
        raise DomainError(f"Occupations must be non-negative, got ({p_occ}, {q_occ}).")
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}.")

    rows = []
    for n in range(-n_max, n_max + 1):
        delta = n * omega + epsilon0 + kappa * (q_occ - p_occ + 1)
        rows.append(LatticeResonance(n=n, detuning=delta, exact=is_exact(delta, omega)))
    return sorted(rows, key=lambda row: (abs(row.detuning), row.n))


def plan_localization(
    n_particles: int, mu_b: float, n_zeros: int = LOCALIZATION_ZEROS
) -> LocalizationPlan:
    """
    Plan a dynamical-localization run at ω = κ that stops population started in
    |−J⟩ from crossing the link μ_b ↔ μ_b+1.

    Raises:
        DomainError: If μ_b is not a magnetic number with −J < μ_b < J.
    """

    j = n_particles / 2
    mu_index(j, mu_b)
    if not -j < mu_b < j:
        raise DomainError(f"Blocked link must satisfy -J < μ_b < J, got μ_b={mu_b}.")

    order = int(abs(round(2 * mu_b + 1)))
    return LocalizationPlan(
        n_particles=n_particles,
        blocked_link=mu_b,
        bessel_order=order,
        candidate_ratios=[bessel_zero(order, k) for k in range(1, n_zeros + 1)],
        max_left_well_atoms=int(round(mu_b + j)),
        mirror_link=-mu_b - 1,
    )


def nearest_exact_resonance(
    p: TwoWellParams, mu: float, span: float = 0.2, n_max: int | None = None
) -> FrequencySearch:
    """
    Search ω ∈ [(1−span)ω, (1+span)ω] for the frequency that brings the pair
    with lower state μ closest to resonance.

    For each harmonic the detuning nω + s vanishes at ω = −s/n; clipping that
    root into the window gives the best ω per harmonic. Ties go to the
    frequency nearest the configured one.
    """

    _check_modulated(p)
    if not 0 < span < 1:
        raise DomainError(f"Span must lie in (0, 1), got {span}.")
    mu_index(p.j, mu)
    mu_index(p.j, mu + pair_step(p))

    if n_max is None:
        n_max = default_n_max(p.bessel_argument)

    low, high = (1 - span) * p.omega, (1 + span) * p.omega
    offset = static_detuning(p, mu)

    best = None
    for n in range(-n_max, n_max + 1):
        omega = p.omega if n == 0 else float(np.clip(-offset / n, low, high))
        delta = n * omega + offset
        key = (abs(delta), abs(omega - p.omega), abs(n))
        if best is None or key < best[0]:
            best = (key, omega, n, delta)

    _, omega, n, delta = best
    return FrequencySearch(mu=mu, omega=omega, n=n, detuning=delta, exact=is_exact(delta, omega))
