from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import linalg

from bec_resonance.algebra.model import (
    HERMITIAN_KINDS,
    OperatorKind,
    OperatorMatrix,
    two_j_of,
)
from bec_resonance.util.errors import ContractError, DomainError


def mu_values(j: float) -> np.ndarray:
    """Magnetic numbers μ = −J..J in basis order."""
    return np.arange(two_j_of(j) + 1) - two_j_of(j) / 2


@lru_cache(maxsize=256)
def _entries(two_j: int, kind: OperatorKind) -> np.ndarray:
    j = two_j / 2
    mu = np.arange(two_j + 1) - j

    if kind == OperatorKind.JZ:
        entries = np.diag(mu).astype(np.complex128)
    elif kind == OperatorKind.JZ2:
        entries = np.diag(mu**2).astype(np.complex128)
    elif kind == OperatorKind.JPLUS:
        # <μ+1|J+|μ> = sqrt((J−μ)(J+μ+1)) on the first subdiagonal
        amplitudes = np.sqrt((j - mu[:-1]) * (j + mu[:-1] + 1))
        entries = np.diag(amplitudes, k=-1).astype(np.complex128)
    elif kind == OperatorKind.JMINUS:
        entries = _entries(two_j, OperatorKind.JPLUS).conj().T.copy()
    else:
        jz = _entries(two_j, OperatorKind.JZ)
        jp = _entries(two_j, OperatorKind.JPLUS)
        jm = _entries(two_j, OperatorKind.JMINUS)
        jx = (jp + jm) / 2
        jy = (jp - jm) / 2j
        entries = {
            OperatorKind.JX: jx,
            OperatorKind.JY: jy,
            OperatorKind.JX_PLUS: -jz + 1j * jy,
            OperatorKind.JX_MINUS: -jz - 1j * jy,
            OperatorKind.JY_PLUS: jx - 1j * jz,
            OperatorKind.JY_MINUS: jx + 1j * jz,
        }[kind]

    entries.setflags(write=False)
    return entries


def operator_entries(j: float, kind: OperatorKind) -> np.ndarray:
    """Read-only cached entries of a basic SU(2) operator."""
    return _entries(two_j_of(j), kind)


def build_operator(j: float, kind: OperatorKind) -> OperatorMatrix:
    """
    Build an SU(2) operator in the number basis ordered μ = −J..J.

    Args:
        j (float): Total angular momentum J = N/2.
        kind (OperatorKind): Which operator to build.

    Returns:
        OperatorMatrix: The operator, flagged Hermitian where applicable.
    """

    return OperatorMatrix(entries=operator_entries(j, kind), hermitian=kind in HERMITIAN_KINDS)


def exp_hermitian(entries: np.ndarray, tau: float) -> np.ndarray:
    """exp(−iHτ) of a Hermitian array via its eigendecomposition."""

    eigenvalues, eigenvectors = linalg.eigh(entries)
    return (eigenvectors * np.exp(-1j * eigenvalues * tau)) @ eigenvectors.conj().T


def unitary_exponential(h: OperatorMatrix, tau: float) -> OperatorMatrix:
    """
    Realize exp(−iHτ) for a Hermitian operator.

    Raises:
        ContractError: If the operator is not flagged Hermitian.
    """

    if not h.hermitian:
        raise ContractError("unitary_exponential requires a Hermitian operator.")
    return OperatorMatrix(entries=exp_hermitian(h.entries, tau), unitary=True)


def rotation_operator(j: float, theta: float, phi: float) -> OperatorMatrix:
    """R(θ, φ) = exp[−iθ(Jy cos φ − Jx sin φ)]."""

    if not (np.isfinite(theta) and np.isfinite(phi)):
        raise DomainError(f"Rotation angles must be finite, got θ={theta}, φ={phi}.")

    generator = (
        np.cos(phi) * operator_entries(j, OperatorKind.JY)
        - np.sin(phi) * operator_entries(j, OperatorKind.JX)
    )
    return unitary_exponential(OperatorMatrix(entries=generator, hermitian=True), theta)


def function_of(op: OperatorMatrix, f: Callable[[np.ndarray], np.ndarray]) -> OperatorMatrix:
    """Apply an analytic function to a Hermitian operator through its spectrum."""

    if not op.hermitian:
        raise ContractError("function_of requires a Hermitian operator.")
    eigenvalues, eigenvectors = linalg.eigh(op.entries)
    entries = (eigenvectors * f(eigenvalues)) @ eigenvectors.conj().T
    return OperatorMatrix(entries=entries)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(entries=a.entries @ b.entries - b.entries @ a.entries)
