import numpy as np
import polars as pl
from scipy import signal

from bec_resonance.algebra.core import rotation_operator
from bec_resonance.observables.model import (
    TIME_COLUMN,
    NumberBasisMeasurement,
    TimeSeries,
    population_channel,
    x_population_channel,
)
from bec_resonance.propagation.model import Trajectory
from bec_resonance.states.model import StateVector
from bec_resonance.util.errors import ContractError, DomainError


def _x_basis(j: float) -> np.ndarray:
    # columns are |μ⟩_x = R(π/2, 0)|μ⟩
    return rotation_operator(j, np.pi / 2, 0.0).entries


def measure_number_basis(psi: StateVector) -> NumberBasisMeasurement:
    """Populations P_μ = |c_μ|² and the moments of Jz."""

    populations = np.abs(psi.amplitudes) ** 2
    mu = psi.mu_values
    jz_mean = float(populations @ mu)
    jz2_mean = float(populations @ mu**2)
    return NumberBasisMeasurement(
        mu_values=mu,
        populations=populations,
        jz_mean=jz_mean,
        jz_var=jz2_mean - jz_mean**2,
        jz_mean_squared=jz_mean**2,
        jz2_mean=jz2_mean,
    )


def measure_x_basis(psi: StateVector) -> np.ndarray:
    """Populations P^x_μ = |⟨μ|_x ψ⟩|² of the Jx eigenbasis, ordered μ = −J..J."""
    return np.abs(_x_basis(psi.j).conj().T @ psi.amplitudes) ** 2


def trajectory_timeseries(
    trajectory: Trajectory,
    x_basis: bool = False,
    time_scale: float = 1.0,
) -> TimeSeries:
    """
    Tabulate a two-well trajectory.

    Args:
        trajectory (Trajectory): Lab-frame trajectory with `j` set.
        x_basis (bool): Also emit the Jx-basis populations.
        time_scale (float): Factor applied to the time column, κ for scaled units.

    Returns:
        TimeSeries: Columns t, P_mu[..], jz_mean, jz_var, jz_mean_squared,
            jz2_mean and optionally Px_mu[..].
    """

    if trajectory.j is None:
        raise ContractError("Only two-well trajectories can be tabulated by μ.")

    j = trajectory.j
    amplitudes = trajectory.amplitudes
    populations = np.abs(amplitudes) ** 2
    mu = np.arange(amplitudes.shape[1]) - j
    jz_mean = populations @ mu
    jz2_mean = populations @ mu**2

    columns = {TIME_COLUMN: trajectory.times * time_scale}
    for index, value in enumerate(mu):
        columns[population_channel(value)] = populations[:, index]
    columns["jz_mean"] = jz_mean
    columns["jz_var"] = jz2_mean - jz_mean**2
    columns["jz_mean_squared"] = jz_mean**2
    columns["jz2_mean"] = jz2_mean

    if x_basis:
        x_populations = np.abs(amplitudes @ _x_basis(j).conj()) ** 2
        for index, value in enumerate(mu):
            columns[x_population_channel(value)] = x_populations[:, index]

    return TimeSeries(frame=pl.DataFrame(columns))


def first_maximum_frequency(times: np.ndarray, values: np.ndarray) -> float:
    """
    Oscillation frequency from the first maximum of a population that starts
    near zero: the first peak above half the global maximum marks half a Rabi
    period, so the frequency is π / t_peak. Peaks also need a prominence
    of a quarter of the maximum.

    Raises:
        DomainError: If the series has no such peak.
    """

    values = np.asarray(values)
    top = float(np.max(values))
    peaks, _ = signal.find_peaks(values, height=0.5 * top, prominence=0.25 * top)
    if peaks.size == 0:
        raise DomainError("The series has no interior maximum.")
    return float(np.pi / np.asarray(times)[peaks[0]])
