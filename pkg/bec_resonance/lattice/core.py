import logging
import math
from typing import Iterator

import numpy as np
from pydantic import PrivateAttr
from scipy import sparse

from bec_resonance.hamiltonian.model import Modulation, TwoWellParams
from bec_resonance.lattice.model import (
    DEFAULT_MAX_DIMENSION,
    HopTable,
    LatticeBasis,
    LatticeParams,
    LatticeState,
    SiteObservables,
)
from bec_resonance.resonance.bessel import (
    WEIGHT_MASS_THRESHOLD,
    bessel_weights,
    default_n_max,
)
from bec_resonance.util.errors import ContractError, DomainError, TruncationError
from bec_resonance.util.model import ArrayModel

logger = logging.getLogger(__name__)


def _compositions(n_particles: int, n_sites: int) -> Iterator[tuple[int, ...]]:
    if n_sites == 1:
        yield (n_particles,)
        return
    for first in range(n_particles + 1):
        for rest in _compositions(n_particles - first, n_sites - 1):
            yield (first, *rest)


def build_basis(
    n_sites: int, n_particles: int, max_dimension: int = DEFAULT_MAX_DIMENSION
) -> LatticeBasis:
    """
    Enumerate all occupation vectors with N atoms on L sites.

    Raises:
        DomainError: If L < 1, N < 0 or C(N+L−1, L−1) exceeds max_dimension.
    """

    if n_sites < 1 or n_particles < 0:
        raise DomainError(f"Invalid lattice L={n_sites}, N={n_particles}.")

    dimension = math.comb(n_particles + n_sites - 1, n_sites - 1)
    if dimension > max_dimension:
        raise DomainError(
            f"Basis of L={n_sites}, N={n_particles} has {dimension} states, "
            f"above the cap of {max_dimension}."
        )

    logger.debug("Building lattice basis L=%d N=%d dim=%d", n_sites, n_particles, dimension)
    return LatticeBasis(occupations=list(_compositions(n_particles, n_sites)))


def basis_of(p: LatticeParams) -> LatticeBasis:
    return build_basis(p.n_sites, p.n_particles, p.max_dimension)


def hop_table(basis: LatticeBasis) -> HopTable:
    """Matrix elements of the rightward hops a†ₗ₊₁aₗ summed over links."""

    rows, cols, values, shifts = [], [], [], []
    for source, occupation in enumerate(basis.occupations):
        for link in range(basis.n_sites - 1):
            p_occ, q_occ = int(occupation[link]), int(occupation[link + 1])
            if p_occ == 0:
                continue
            target = occupation.copy()
            target[link] -= 1
            target[link + 1] += 1
            rows.append(basis.index_of(target))
            cols.append(source)
            values.append(np.sqrt((q_occ + 1) * p_occ))
            shifts.append(q_occ - p_occ + 1)

    return HopTable(
        rows=np.array(rows, dtype=np.int64),
        cols=np.array(cols, dtype=np.int64),
        values=np.array(values, dtype=np.float64),
        shifts=np.array(shifts, dtype=np.float64),
    )


def tilt_energies(basis: LatticeBasis) -> np.ndarray:
    """Σₗ l·nₗ per basis state."""
    return basis.occupations @ np.arange(basis.n_sites)


def interaction_energies(basis: LatticeBasis) -> np.ndarray:
    """½Σₗ nₗ(nₗ−1) per basis state."""
    occupations = basis.occupations
    return 0.5 * np.sum(occupations * (occupations - 1), axis=1)


def _hermitian_hops(table: HopTable, data: np.ndarray, dimension: int) -> sparse.csr_matrix:
    forward = sparse.csr_matrix((data, (table.rows, table.cols)), shape=(dimension, dimension))
    return forward + forward.conj().T


class BoseHubbardHamiltonian(ArrayModel):
    """Lab-frame evaluator of the tilted Bose-Hubbard Hamiltonian."""

    params: LatticeParams
    basis: LatticeBasis
    table: HopTable

    _hops: sparse.csr_matrix = PrivateAttr()
    _interaction: np.ndarray = PrivateAttr()
    _tilt: np.ndarray = PrivateAttr()

    def model_post_init(self, __context) -> None:
        self._hops = _hermitian_hops(
            self.table, -(self.params.delta / 2) * self.table.values, self.basis.dimension
        ).tocsr()
        self._interaction = self.params.kappa * interaction_energies(self.basis)
        self._tilt = tilt_energies(self.basis).astype(np.float64)

    def __call__(self, t: float) -> sparse.csr_matrix:
        diagonal = self._interaction + self.params.epsilon_at(t) * self._tilt
        return (self._hops + sparse.diags(diagonal)).tocsr()


class BoseHubbardSideband(ArrayModel):
    """
    Transformed Bose-Hubbard Hamiltonian
    −(δ/2)ΣₗΣₙ Jₙ(ε1/ω)[a†ₗ₊₁aₗ e^{i(nω+ε0)t} e^{iκt(nₗ₊₁−nₗ+1)} + h.c.].

    With `exact` set the harmonic sum is replaced by e^{i(ε1/ω)sin ωt}.
    """

    params: LatticeParams
    basis: LatticeBasis
    table: HopTable
    n_max: int
    weights: np.ndarray
    exact: bool = False

    @property
    def harmonics(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    def _carrier(self, t: float) -> np.ndarray:
        p = self.params
        return np.exp(1j * t * (p.kappa * self.table.shifts + p.epsilon0))

    def modulation_factor(self, t: float) -> complex:
        p = self.params
        if self.exact:
            return complex(np.exp(1j * p.bessel_argument * np.sin(p.omega * t)))
        return complex(np.sum(self.weights * np.exp(1j * self.harmonics * p.omega * t)))

    def _assemble(self, phases: np.ndarray) -> sparse.csr_matrix:
        data = -(self.params.delta / 2) * self.table.values * phases
        return _hermitian_hops(self.table, data, self.basis.dimension).tocsr()

    def term(self, n: int, t: float) -> sparse.csr_matrix:
        """Contribution of the single harmonic n."""

        if abs(n) > self.n_max:
            return sparse.csr_matrix((self.basis.dimension, self.basis.dimension), dtype=complex)
        weight = self.weights[n + self.n_max]
        phase = np.exp(1j * n * self.params.omega * t)
        return self._assemble(self._carrier(t) * weight * phase)

    def __call__(self, t: float) -> sparse.csr_matrix:
        return self._assemble(self._carrier(t) * self.modulation_factor(t))


def bh_evaluator(p: LatticeParams, basis: LatticeBasis | None = None) -> BoseHubbardHamiltonian:
    basis = basis or basis_of(p)
    return BoseHubbardHamiltonian(params=p, basis=basis, table=hop_table(basis))


def bh_hamiltonian_at(
    p: LatticeParams, t: float, basis: LatticeBasis | None = None
) -> sparse.csr_matrix:
    """Sparse Hermitian lab-frame Hamiltonian at time t."""
    return bh_evaluator(p, basis)(t)


def bh_sideband(
    p: LatticeParams,
    basis: LatticeBasis | None = None,
    n_max: int | None = None,
    exact: bool = False,
    strict: bool = True,
) -> BoseHubbardSideband:
    """
    Evaluator of the transformed lattice Hamiltonian.

    Raises:
        TruncationError: If the kept Bessel weight mass is below 0.999 and
            strict is set.
    """

    basis = basis or basis_of(p)
    argument = p.bessel_argument
    if n_max is None:
        n_max = default_n_max(argument)
    if n_max < 0:
        raise ContractError(f"n_max must be non-negative, got {n_max}.")

    weights = bessel_weights(n_max, argument)
    mass = float(np.sum(weights**2))
    if not exact and mass < WEIGHT_MASS_THRESHOLD:
        message = f"Harmonics |n| <= {n_max} keep only {mass:.6f} of the Bessel weight."
        if strict:
            raise TruncationError(message)
        logger.warning(message)

    return BoseHubbardSideband(
        params=p, basis=basis, table=hop_table(basis), n_max=n_max, weights=weights, exact=exact
    )


def bh_transformed(
    p: LatticeParams,
    t: float,
    n_max: int | None = None,
    basis: LatticeBasis | None = None,
    strict: bool = True,
) -> sparse.csr_matrix:
    """Truncated sideband form of the lattice Hamiltonian at time t."""
    return bh_sideband(p, basis, n_max=n_max, strict=strict)(t)


def bh_frame_phases(p: LatticeParams, t: float, basis: LatticeBasis) -> np.ndarray:
    """
    Diagonal of T_BH(t) = exp[−iθ(t)Σₗ l·nₗ − i(κ/2)tΣₗ nₗ(nₗ−1)], so that
    ψ_lab = T_BH ψ_transformed.
    """

    return np.exp(
        -1j * p.theta(t) * tilt_energies(basis) - 1j * p.kappa * t * interaction_energies(basis)
    )


def fock_state(basis: LatticeBasis, occupation) -> LatticeState:
    amplitudes = np.zeros(basis.dimension, dtype=np.complex128)
    amplitudes[basis.index_of(occupation)] = 1.0
    return LatticeState(amplitudes=amplitudes)


def site_observables(psi: LatticeState | np.ndarray, basis: LatticeBasis) -> SiteObservables:
    """Mean occupation ⟨nₗ⟩ and number variance ⟨nₗ²⟩ − ⟨nₗ⟩² per site."""

    amplitudes = psi.amplitudes if isinstance(psi, LatticeState) else np.asarray(psi)
    probabilities = np.abs(amplitudes) ** 2
    occupations = basis.occupations.astype(np.float64)
    mean = probabilities @ occupations
    return SiteObservables(mean=mean, variance=probabilities @ occupations**2 - mean**2)


def two_well_params_from_lattice(p: LatticeParams) -> TwoWellParams:
    """
    The two-well model equivalent to a two-site lattice.

    Site 0 is well 1 and site 1 is well 2, so μ = (n₀ − n₁)/2 and the basis
    index n₀ is the same in both models. The tilt ε·n₁ = −εJz + εN/2 flips the
    sign of ε, and the interaction adds (κ/4)(N² − 2N); see
    `lattice_energy_offset`.
    """

    if p.n_sites != 2:
        raise ContractError(f"Only a two-site lattice maps onto two wells, got L={p.n_sites}.")

    return TwoWellParams(
        n_particles=p.n_particles,
        kappa=p.kappa,
        epsilon0=-p.epsilon0,
        epsilon1=-p.epsilon1,
        delta0=p.delta,
        omega=p.omega,
        modulation=Modulation.ENERGY_DIFFERENCE if p.modulated else Modulation.NONE,
    )


def lattice_energy_offset(p: LatticeParams, t: float) -> float:
    """E_lattice − E_two-well = (κ/4)(N² − 2N) + ε(t)N/2 for L = 2."""

    n = p.n_particles
    return p.kappa / 4 * (n**2 - 2 * n) + p.epsilon_at(t) * n / 2
