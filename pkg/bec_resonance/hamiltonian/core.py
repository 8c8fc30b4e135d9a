import logging

import numpy as np

from bec_resonance.algebra.core import mu_values, rotation_operator
from bec_resonance.algebra.model import OperatorMatrix
from bec_resonance.hamiltonian.model import (
    Frame,
    Modulation,
    SidebandHamiltonian,
    TwoWellHamiltonian,
    TwoWellParams,
    XFormHamiltonian,
)
from bec_resonance.resonance.bessel import (
    WEIGHT_MASS_THRESHOLD,
    bessel_weights,
    default_n_max,
)
from bec_resonance.states.model import StateVector
from bec_resonance.util.errors import ContractError, TruncationError

logger = logging.getLogger(__name__)


def hamiltonian_at(p: TwoWellParams, t: float) -> OperatorMatrix:
    """
    Lab-frame Hamiltonian H(t)/ħ = ε(t)Jz − δ(t)Jx + κJz² in the number basis.

    Args:
        p (TwoWellParams): System parameters.
        t (float): Time.

    Returns:
        OperatorMatrix: Hermitian operator.
    """

    return OperatorMatrix(entries=TwoWellHamiltonian(params=p)(t), hermitian=True)


def x_form_evaluator(p: TwoWellParams) -> XFormHamiltonian:
    if p.epsilon0 != 0 or p.epsilon1 != 0:
        raise ContractError("The Jx form of the Hamiltonian is only valid for ε = 0.")
    return XFormHamiltonian(params=p)


def x_form_hamiltonian(p: TwoWellParams, t: float) -> OperatorMatrix:
    """
    The Hamiltonian rewritten through Jx and the shifted ladders Jx±.

    Raises:
        ContractError: If ε0 or ε1 is nonzero.
    """

    return OperatorMatrix(entries=x_form_evaluator(p)(t), hermitian=True)


def frame_of(p: TwoWellParams) -> Frame:
    """The interaction picture that matches the modulated parameter."""

    if p.modulation == Modulation.ENERGY_DIFFERENCE:
        return Frame.ENERGY
    elif p.modulation == Modulation.COUPLING:
        return Frame.COUPLING
    raise ContractError("An unmodulated system has no transformed frame.")


def _check_frame(p: TwoWellParams, frame: Frame):
    if frame_of(p) != frame:
        raise ContractError(
            f"Frame {frame.value} does not match modulation {p.modulation.value}."
        )
    if frame == Frame.COUPLING and p.epsilon0 != 0:
        raise ContractError("The coupling frame assumes equal well energies, ε0 = 0.")


def _frame_diagonal(p: TwoWellParams, t: float, frame: Frame) -> np.ndarray:
    mu = mu_values(p.j)
    if frame == Frame.ENERGY:
        return np.exp(-1j * p.theta(t) * mu - 1j * p.kappa * t * mu**2)

    j = p.j
    return np.exp(1j * (p.eta(t) * mu - 0.5 * p.kappa * t * (j * (j + 1) - mu**2)))


def frame_transform(p: TwoWellParams, t: float, frame: Frame) -> OperatorMatrix:
    """
    The time-dependent unitary relating lab and transformed frames.

    Energy frame:   T(t) = exp[−iθ(t)Jz − iκtJz²]
    Coupling frame: S(t) = exp[iη(t)Jx − (i/2)κt(J(J+1) − Jx²)]

    Both act as ψ_lab = U(t)ψ_transformed.

    Raises:
        ContractError: If the frame does not match the modulation.
    """

    _check_frame(p, frame)
    diagonal = _frame_diagonal(p, t, frame)
    if frame == Frame.ENERGY:
        return OperatorMatrix(entries=np.diag(diagonal), unitary=True)

    x_basis = rotation_operator(p.j, np.pi / 2, 0.0).entries
    entries = (x_basis * diagonal) @ x_basis.conj().T
    return OperatorMatrix(entries=entries, unitary=True)


def sideband_hamiltonian(
    p: TwoWellParams,
    n_max: int | None = None,
    exact: bool = False,
    strict: bool = True,
) -> SidebandHamiltonian:
    """
    Build the evaluator of the transformed Hamiltonian.

    Args:
        p (TwoWellParams): Modulated system parameters.
        n_max (int | None): Highest harmonic kept. Defaults to ceil(|arg|) + 8.
        exact (bool): Use the closed-form phase instead of the truncated sum.
        strict (bool): Raise instead of warn when the kept Bessel weight mass
            Σ Jₙ² falls below 0.999.

    Raises:
        ContractError: If the system is not modulated.
        TruncationError: If the truncation discards too much weight.
    """

    frame = frame_of(p)
    _check_frame(p, frame)

    argument = p.bessel_argument
    if n_max is None:
        n_max = default_n_max(argument)
    if n_max < 0:
        raise ContractError(f"n_max must be non-negative, got {n_max}.")

    weights = bessel_weights(n_max, argument)
    mass = float(np.sum(weights**2))
    if not exact and mass < WEIGHT_MASS_THRESHOLD:
        message = (
            f"Harmonics |n| <= {n_max} keep only {mass:.6f} of the Bessel weight "
            f"for argument {argument:.6g}."
        )
        if strict:
            raise TruncationError(message)
        logger.warning(message)

    return SidebandHamiltonian(
        params=p, frame=frame, n_max=n_max, weights=weights, exact=exact
    )


def transformed_hamiltonian(
    p: TwoWellParams, t: float, n_max: int | None = None, strict: bool = True
) -> OperatorMatrix:
    """Truncated sideband Hamiltonian at time t in the number basis."""

    evaluator = sideband_hamiltonian(p, n_max=n_max, strict=strict)
    return OperatorMatrix(entries=evaluator(t), hermitian=True)


def to_lab_frame(p: TwoWellParams, t: float, state: StateVector) -> StateVector:
    """Map a transformed-frame state back to the lab frame."""

    transform = frame_transform(p, t, frame_of(p))
    return StateVector(j=state.j, amplitudes=transform.entries @ state.amplitudes)
