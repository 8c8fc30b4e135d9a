from pydantic import BaseModel, ConfigDict


class ResonanceHit(BaseModel):
    """
    One harmonic n acting on the coupled pair with lower state μ.

    The pair is (μ, μ+1) for energy modulation and (μ, μ+2) in the Jx basis
    for coupling modulation. `effective_coupling` is Ω·Jₙ/detuning and is
    infinite at an exact resonance.
    """

    model_config = ConfigDict(frozen=True)

    mu: float
    n: int
    detuning: float
    bare_coupling: float
    bessel_weight: float
    effective_coupling: float
    exact: bool


class LatticeResonance(BaseModel):
    """Detuning of harmonic n for the hop (p, q) → (p−1, q+1)."""

    model_config = ConfigDict(frozen=True)

    n: int
    detuning: float
    exact: bool


class LocalizationPlan(BaseModel):
    """
    How to block the link μ_b ↔ μ_b+1 at ω = κ, ε0 = 0.

    The harmonic resonant on that link is −(2μ_b+1); a ratio ε1/ω at a zero of
    that Bessel order removes it. Since J₋ₘ = (−1)ᵐJₘ the link
    `mirror_link` ↔ `mirror_link`+1 is blocked as well.
    """

    model_config = ConfigDict(frozen=True)

    n_particles: int
    blocked_link: float
    bessel_order: int
    candidate_ratios: list[float]
    max_left_well_atoms: int
    mirror_link: float


class FrequencySearch(BaseModel):
    """The modulation frequency closest to resonance for one coupled pair."""

    model_config = ConfigDict(frozen=True)

    mu: float
    omega: float
    n: int
    detuning: float
    exact: bool
