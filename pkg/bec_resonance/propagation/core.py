import logging
import math
from typing import Any, Callable

import numpy as np
from scipy import integrate, sparse

from bec_resonance.algebra.core import exp_hermitian, mu_values, operator_entries
from bec_resonance.algebra.model import OperatorKind, OperatorMatrix, two_j_of
from bec_resonance.propagation.model import (
    AnalyticLimit,
    CouplingOnly,
    InteractionOnly,
    RevivalFraction,
    Trajectory,
)
from bec_resonance.states.core import coherent_family
from bec_resonance.states.model import PhaseState, StateVector
from bec_resonance.util.errors import ContractError, DomainError, IntegrationError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
NORM_DRIFT_LIMIT = 1e-7

Evaluator = Callable[[float], Any]


def _amplitudes_of(psi0: StateVector | np.ndarray) -> tuple[np.ndarray, float | None]:
    if isinstance(psi0, StateVector):
        return np.array(psi0.amplitudes), psi0.j

    amplitudes = np.asarray(psi0, dtype=np.complex128)
    if abs(np.linalg.norm(amplitudes) - 1.0) > 1e-10:
        raise ContractError("Initial state must be normalized.")
    return amplitudes.copy(), None


def evolve(
    hamiltonian: Evaluator,
    psi0: StateVector | np.ndarray,
    t_grid: np.ndarray,
    tol: float = DEFAULT_TOLERANCE,
    metadata: dict[str, Any] | None = None,
) -> Trajectory:
    """
    Solve i dψ/dt = H(t)ψ with an adaptive Runge-Kutta method.

    Output states on `t_grid` are read from the solver's seventh-order dense
    output between its adaptive steps. A state whose norm drifted by more than
    1e−7 fails the run; smaller drifts are renormalized without touching the
    global phase.

    Args:
        hamiltonian (Evaluator): Callable returning a dense or sparse H(t).
        psi0 (StateVector | np.ndarray): Normalized initial state.
        t_grid (np.ndarray): Strictly increasing output times starting at 0.
        tol (float): Relative and absolute error tolerance.
        metadata (dict | None): Stored with the trajectory.

    Returns:
        Trajectory: The evolved states.

    Raises:
        DomainError: If tol is not positive.
        IntegrationError: If the solver fails or the norm drifts.
    """

    if not tol > 0:
        raise DomainError(f"Integrator tolerance must be positive, got {tol}.")

    amplitudes, j = _amplitudes_of(psi0)
    times = np.asarray(t_grid, dtype=np.float64)
    metadata = {"tolerance": tol, "integrator": "DOP853", **(metadata or {})}

    if times.size == 1:
        return Trajectory(times=times, amplitudes=amplitudes[np.newaxis, :], j=j, metadata=metadata)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return -1j * (hamiltonian(t) @ y)

    logger.debug("Integrating dim=%d over [%g, %g]", amplitudes.size, times[0], times[-1])
    result = integrate.solve_ivp(
        rhs,
        (times[0], times[-1]),
        amplitudes,
        method="DOP853",
        t_eval=times,
        rtol=tol,
        atol=tol,
    )
    if not result.success:
        raise IntegrationError(f"Time integration failed: {result.message}")

    states = result.y.T
    norms = np.linalg.norm(states, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > NORM_DRIFT_LIMIT:
        raise IntegrationError(
            f"Norm drifted by {drift:.3e}; tighten tol or check that H is Hermitian."
        )
    logger.debug("Done after %d evaluations, renormalizing drift %.3e", result.nfev, drift)

    return Trajectory(
        times=times,
        amplitudes=states / norms[:, np.newaxis],
        j=j,
        metadata=metadata,
    )


def piecewise_exponential_oracle(
    hamiltonian: Evaluator, psi0: StateVector | np.ndarray, t_end: float, dt: float
) -> StateVector | np.ndarray:
    """
    Independent propagator built from exact exponentials of H frozen at the
    midpoint of each step. Second order in dt and unitary by construction.
    """

    if not dt > 0:
        raise DomainError(f"Oracle step must be positive, got {dt}.")

    amplitudes, j = _amplitudes_of(psi0)
    steps = max(1, math.ceil(t_end / dt - 1e-9))
    step = t_end / steps

    for index in range(steps):
        h = hamiltonian((index + 0.5) * step)
        if sparse.issparse(h):
            h = h.toarray()
        amplitudes = exp_hermitian(h, step) @ amplitudes

    if j is None:
        return amplitudes
    return StateVector(j=j, amplitudes=amplitudes / np.linalg.norm(amplitudes))


def analytic_limit_propagator(j: float, limit: AnalyticLimit) -> OperatorMatrix:
    """
    Closed-form propagators of the two solvable limits.

    CouplingOnly(η):      exp(iηJx)
    InteractionOnly(κ,t): exp(−iκtJz²)
    """

    if isinstance(limit, CouplingOnly):
        entries = exp_hermitian(operator_entries(j, OperatorKind.JX), -limit.eta)
    elif isinstance(limit, InteractionOnly):
        entries = np.diag(np.exp(-1j * limit.kappa * limit.t * mu_values(j) ** 2))
    else:
        raise DomainError(f"Unknown analytic limit {limit!r}.")
    return OperatorMatrix(entries=entries, unitary=True)


def revival_time(kappa: float, fraction: RevivalFraction) -> float:
    """Fraction of the revival period T = 2π/κ."""

    if not kappa > 0:
        raise DomainError(f"Revivals need κ > 0, got {kappa}.")
    return fraction.ratio * 2 * np.pi / kappa


def revival_operator(j: float, kappa: float, fraction: RevivalFraction) -> OperatorMatrix:
    """
    exp(−iκtJz²) at t = T, T/2 or T/4 in closed form.

    Even N: U(T) = 1, U(T/2) = exp(−iπJz),
            U(T/4) = [e^{−iπ/4} + e^{iπ/4}exp(−iπJz)]/√2.
    Odd N:  U(T) = e^{−iπ/2}, U(T/2) = e^{−iπ/4},
            U(T/4) = e^{−iπ/8}[exp(iπJz/2) + exp(−iπJz/2)]/√2.
    """

    revival_time(kappa, fraction)
    mu = mu_values(j)
    even = two_j_of(j) % 2 == 0

    if even:
        parity = np.exp(-1j * np.pi * mu)
        diagonal = {
            RevivalFraction.FULL: np.ones_like(parity),
            RevivalFraction.HALF: parity,
            RevivalFraction.QUARTER: (np.exp(-1j * np.pi / 4) + np.exp(1j * np.pi / 4) * parity)
            / np.sqrt(2),
        }[fraction]
    else:
        diagonal = {
            RevivalFraction.FULL: np.full(mu.shape, np.exp(-1j * np.pi / 2)),
            RevivalFraction.HALF: np.full(mu.shape, np.exp(-1j * np.pi / 4)),
            RevivalFraction.QUARTER: np.exp(-1j * np.pi / 8)
            * (np.exp(1j * np.pi * mu / 2) + np.exp(-1j * np.pi * mu / 2))
            / np.sqrt(2),
        }[fraction]

    return OperatorMatrix(entries=np.diag(diagonal), unitary=True)


def quarter_revival_phase_state(j: float, phi: float) -> StateVector:
    """
    The phase state |φ⟩ after a quarter revival period, as a superposition of
    two phase states.

    Even N: [e^{−iπ/4}|φ⟩ + e^{iπ/4}e^{−iπJ}|φ+π⟩]/√2
    Odd N:  e^{−iπ/8}[e^{iπJ/2}|φ−π/2⟩ + e^{−iπJ/2}|φ+π/2⟩]/√2
    """

    def ps(angle: float) -> np.ndarray:
        return coherent_family(j, PhaseState(phi=angle)).amplitudes

    if two_j_of(j) % 2 == 0:
        amplitudes = (
            np.exp(-1j * np.pi / 4) * ps(phi)
            + np.exp(1j * np.pi / 4) * np.exp(-1j * np.pi * j) * ps(phi + np.pi)
        ) / np.sqrt(2)
    else:
        amplitudes = (
            np.exp(-1j * np.pi / 8)
            * (
                np.exp(1j * np.pi * j / 2) * ps(phi - np.pi / 2)
                + np.exp(-1j * np.pi * j / 2) * ps(phi + np.pi / 2)
            )
            / np.sqrt(2)
        )
    return StateVector(j=j, amplitudes=amplitudes)
