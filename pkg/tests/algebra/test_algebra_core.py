import numpy as np
import pytest
from pydantic import ValidationError

from bec_resonance.algebra.core import (
    build_operator,
    commutator,
    function_of,
    mu_values,
    operator_entries,
    rotation_operator,
    unitary_exponential,
)
from bec_resonance.algebra.model import OperatorKind, OperatorMatrix, SpinQuantum, two_j_of
from bec_resonance.util.errors import ContractError, DomainError

J_VALUES = [0.5, 1.0, 8.0, 7.5]


def op(j: float, kind: OperatorKind) -> np.ndarray:
    return operator_entries(j, kind)


@pytest.mark.parametrize("j", J_VALUES)
class TestCommutationRelations:
    """Angular-momentum algebra of the Schwinger operators."""

    def test_jx_jy_gives_jz(self, j):
        """[Jx, Jy] = iJz."""
        jx, jy, jz = op(j, OperatorKind.JX), op(j, OperatorKind.JY), op(j, OperatorKind.JZ)
        assert np.max(np.abs(jx @ jy - jy @ jx - 1j * jz)) < 1e-10

    def test_jz_raises(self, j):
        """[Jz, J+] = J+ and [Jz, J-] = -J-."""
        jz, jp, jm = op(j, OperatorKind.JZ), op(j, OperatorKind.JPLUS), op(j, OperatorKind.JMINUS)
        assert np.max(np.abs(jz @ jp - jp @ jz - jp)) < 1e-10
        assert np.max(np.abs(jz @ jm - jm @ jz + jm)) < 1e-10

    def test_ladder_commutator(self, j):
        """[J+, J-] = 2Jz."""
        jz, jp, jm = op(j, OperatorKind.JZ), op(j, OperatorKind.JPLUS), op(j, OperatorKind.JMINUS)
        assert np.max(np.abs(jp @ jm - jm @ jp - 2 * jz)) < 1e-10

    def test_casimir(self, j):
        """Jx² + Jy² + Jz² = J(J+1)."""
        jx, jy, jz = op(j, OperatorKind.JX), op(j, OperatorKind.JY), op(j, OperatorKind.JZ)
        casimir = jx @ jx + jy @ jy + jz @ jz
        assert np.max(np.abs(casimir - j * (j + 1) * np.eye(jz.shape[0]))) < 1e-10

    def test_ladder_amplitudes(self, j):
        """<μ+1|J+|μ> = sqrt((J-μ)(J+μ+1))."""
        jp = op(j, OperatorKind.JPLUS)
        for index, mu in enumerate(mu_values(j)[:-1]):
            assert abs(jp[index + 1, index] - np.sqrt((j - mu) * (j + mu + 1))) < 1e-10

    def test_shifted_ladders_raise_jx_and_jy(self, j):
        """[Jx, Jx+] = Jx+ and [Jy, Jy+] = Jy+."""
        jx, jy = op(j, OperatorKind.JX), op(j, OperatorKind.JY)
        jx_plus, jy_plus = op(j, OperatorKind.JX_PLUS), op(j, OperatorKind.JY_PLUS)
        assert np.max(np.abs(jx @ jx_plus - jx_plus @ jx - jx_plus)) < 1e-10
        assert np.max(np.abs(jy @ jy_plus - jy_plus @ jy - jy_plus)) < 1e-10

    def test_shifted_ladders_are_adjoint_pairs(self, j):
        """Jx- = (Jx+)† and Jy- = (Jy+)†."""
        assert np.allclose(op(j, OperatorKind.JX_MINUS), op(j, OperatorKind.JX_PLUS).conj().T)
        assert np.allclose(op(j, OperatorKind.JY_MINUS), op(j, OperatorKind.JY_PLUS).conj().T)


class TestQuantumNumbers:
    """Validation of J and the basis layout."""

    def test_half_integers_accepted(self):
        """Half-integer J maps to 2J."""
        assert two_j_of(7.5) == 15
        assert two_j_of(8) == 16

    @pytest.mark.parametrize("j", [0.3, -1.0, 2.25])
    def test_invalid_j_rejected(self, j):
        """J must be a non-negative half-integer."""
        with pytest.raises(DomainError):
            two_j_of(j)

    def test_spin_quantum_layout(self):
        """Index 0 holds μ = -J."""
        quantum = SpinQuantum.from_j(2.5)
        assert quantum.dimension == 6
        assert quantum.mu_values[0] == -2.5
        assert quantum.index_of(2.5) == 5

    def test_build_operator_flags(self):
        """Hermitian kinds are flagged, ladders are not."""
        assert build_operator(2, OperatorKind.JX).hermitian
        assert not build_operator(2, OperatorKind.JPLUS).hermitian


class TestOperatorMatrix:
    """Construction checks of OperatorMatrix."""

    def test_rejects_non_square(self):
        """Entries must be square."""
        with pytest.raises(ValidationError):
            OperatorMatrix(entries=np.zeros((2, 3)))

    def test_rejects_false_hermitian_flag(self):
        """A flagged operator must be Hermitian."""
        with pytest.raises(ValidationError):
            OperatorMatrix(entries=[[0, 1], [0, 0]], hermitian=True)

    def test_rejects_false_unitary_flag(self):
        """A flagged operator must be unitary."""
        with pytest.raises(ValidationError):
            OperatorMatrix(entries=[[2, 0], [0, 1]], unitary=True)

    def test_entries_are_read_only(self):
        """Stored entries cannot be mutated."""
        matrix = OperatorMatrix(entries=np.eye(2))
        with pytest.raises(ValueError):
            matrix.entries[0, 0] = 3


class TestExponentials:
    """Unitary exponentials and rotations."""

    def test_requires_hermitian(self):
        """exp(-iHτ) refuses unflagged operators."""
        with pytest.raises(ContractError):
            unitary_exponential(build_operator(1, OperatorKind.JPLUS), 1.0)

    def test_rotation_maps_jz_to_jx(self):
        """R(π/2, 0) Jz R† = Jx."""
        j = 3.5
        rotation = rotation_operator(j, np.pi / 2, 0.0).entries
        rotated = rotation @ op(j, OperatorKind.JZ) @ rotation.conj().T
        assert np.max(np.abs(rotated - op(j, OperatorKind.JX))) < 1e-10

    def test_rotation_maps_jz_to_jy(self):
        """R(π/2, π/2) Jz R† = Jy."""
        j = 3
        rotation = rotation_operator(j, np.pi / 2, np.pi / 2).entries
        rotated = rotation @ op(j, OperatorKind.JZ) @ rotation.conj().T
        assert np.max(np.abs(rotated - op(j, OperatorKind.JY))) < 1e-10

    def test_rotation_rejects_nan(self):
        """Angles must be finite."""
        with pytest.raises(DomainError):
            rotation_operator(1, np.nan, 0.0)

    def test_rotation_is_unitary(self):
        """Rotations carry the unitary flag."""
        assert rotation_operator(8, 1.1, -0.4).unitary


class TestPushThrough:
    """Functions of Jz and Jx commuted past the ladders."""

    @pytest.mark.parametrize(
        "f", [lambda x: x, lambda x: x**2, lambda x: np.exp(1j * x)], ids=["x", "x2", "expix"]
    )
    def test_function_of_jz_past_jplus(self, f):
        """f(Jz)J+ = J+ f(Jz+1)."""
        j = 4
        jz = build_operator(j, OperatorKind.JZ)
        shifted = OperatorMatrix(entries=jz.entries + np.eye(jz.dim), hermitian=True)
        jp = op(j, OperatorKind.JPLUS)
        left = function_of(jz, f).entries @ jp
        right = jp @ function_of(shifted, f).entries
        assert np.max(np.abs(left - right)) < 1e-10

    @pytest.mark.parametrize(
        "g", [lambda x: x, lambda x: x**2, lambda x: np.exp(1j * x)], ids=["x", "x2", "expix"]
    )
    def test_function_of_jx_past_jx_plus_squared(self, g):
        """g(Jx)Jx+² = Jx+² g(Jx+2)."""
        j = 3.5
        jx = build_operator(j, OperatorKind.JX)
        shifted = OperatorMatrix(entries=jx.entries + 2 * np.eye(jx.dim), hermitian=True)
        jx_plus = op(j, OperatorKind.JX_PLUS)
        squared = jx_plus @ jx_plus
        left = function_of(jx, g).entries @ squared
        right = squared @ function_of(shifted, g).entries
        assert np.max(np.abs(left - right)) < 1e-9

    def test_commutator(self):
        """commutator(Jx, Jy) = iJz."""
        result = commutator(build_operator(2, OperatorKind.JX), build_operator(2, OperatorKind.JY))
        assert np.allclose(result.entries, 1j * op(2, OperatorKind.JZ))
