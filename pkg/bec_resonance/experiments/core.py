import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
import polars as pl
from pydantic import BaseModel, ValidationError

from bec_resonance import __version__
from bec_resonance.experiments.model import (
    ExperimentConfig,
    IntegrationFrame,
    LatticeExperimentConfig,
    RunResult,
    ScanConfig,
    ScanResult,
)
from bec_resonance.experiments.presets import PRESETS, preset
from bec_resonance.hamiltonian.core import sideband_hamiltonian, to_lab_frame
from bec_resonance.hamiltonian.model import Modulation, TwoWellHamiltonian, TwoWellParams
from bec_resonance.lattice.core import (
    basis_of,
    bh_evaluator,
    bh_frame_phases,
    bh_sideband,
    fock_state,
)
from bec_resonance.lattice.model import LatticeParams
from bec_resonance.observables.core import trajectory_timeseries
from bec_resonance.observables.model import TIME_COLUMN
from bec_resonance.propagation.core import evolve
from bec_resonance.propagation.model import Trajectory
from bec_resonance.resonance.bessel import default_n_max
from bec_resonance.resonance.core import (
    find_resonances,
    lattice_resonance,
    nearest_exact_resonance,
)
from bec_resonance.states.core import prepare_state
from bec_resonance.util.errors import ConfigError, DomainError
from bec_resonance.util.export import write_csv, write_metadata
from bec_resonance.util.statistics import compute_channels_statistics

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseModel)

INTEGRATOR = "DOP853"

SCAN_SCHEMA = {
    "omega": pl.Float64,
    "epsilon0": pl.Float64,
    "epsilon1": pl.Float64,
    "delta0": pl.Float64,
    "delta1": pl.Float64,
    "kappa": pl.Float64,
    "mu": pl.Float64,
    "n": pl.Int64,
    "detuning": pl.Float64,
    "bare_coupling": pl.Float64,
    "bessel_weight": pl.Float64,
    "effective_coupling": pl.Float64,
    "exact": pl.Boolean,
}

LATTICE_SCAN_SCHEMA = {
    "omega": pl.Float64,
    "epsilon0": pl.Float64,
    "epsilon1": pl.Float64,
    "kappa": pl.Float64,
    "p": pl.Int64,
    "q": pl.Int64,
    "n": pl.Int64,
    "detuning": pl.Float64,
    "exact": pl.Boolean,
}


def load_config(path: Path, model: type[T]) -> T:
    """
    Parse a JSON config document.

    Raises:
        ConfigError: If the file cannot be read or fails validation.
    """

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config '{path}': {e}") from e

    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"Invalid config '{path}':\n{e}") from e


def resolve_experiment(source: str) -> ExperimentConfig:
    """A preset name or the path of an experiment config."""

    if source in PRESETS:
        return preset(source)
    return load_config(Path(source), ExperimentConfig)


def with_overrides(cfg: T, **overrides: Any) -> T:
    """Re-validate a config with the given fields replaced; None keeps a field."""

    updates = {key: value for key, value in overrides.items() if value is not None}
    if not updates:
        return cfg
    try:
        return type(cfg).model_validate({**cfg.model_dump(), **updates})
    except ValidationError as e:
        raise ConfigError(f"Invalid override:\n{e}") from e


def time_scale(kappa: float) -> float:
    """Times are reported as κt whenever the interaction sets a unit."""
    return kappa if kappa > 0 else 1.0


def integrate_two_well(cfg: ExperimentConfig) -> Trajectory:
    """
    Evolve the configured initial state and return the lab-frame trajectory.

    In the transformed frame the exact phases are integrated unless `n_max`
    asks for a truncated sideband sum; the states are mapped back to the lab
    frame afterwards.
    """

    p = cfg.params
    psi0 = prepare_state(p.j, cfg.initial_state)
    metadata = {"frame": cfg.frame.value, "n_max": cfg.n_max}

    if cfg.frame == IntegrationFrame.LAB:
        return evolve(TwoWellHamiltonian(params=p), psi0, cfg.times, cfg.tolerance, metadata)

    evaluator = sideband_hamiltonian(p, n_max=cfg.n_max, exact=cfg.n_max is None)
    transformed = evolve(evaluator, psi0, cfg.times, cfg.tolerance, metadata)
    amplitudes = [
        to_lab_frame(p, t, state).amplitudes
        for t, state in zip(transformed.times, transformed.states)
    ]
    return Trajectory(
        times=transformed.times, amplitudes=amplitudes, j=p.j, metadata=transformed.metadata
    )


def _write_outputs(
    name: str, output_dir: str | None, frame: pl.DataFrame, metadata: dict[str, Any]
) -> tuple[Path | None, Path | None]:
    if output_dir is None:
        return None, None

    directory = Path(output_dir)
    csv_path = write_csv(frame, directory / f"{name}.csv")
    metadata_path = write_metadata(metadata, directory / f"{name}.meta.json")
    logger.info("Wrote %s and %s", csv_path, metadata_path)
    return csv_path, metadata_path


def run_experiment(cfg: ExperimentConfig) -> RunResult:
    """
    Run one two-well experiment and persist its time series.

    Writes `<name>.csv` with columns t, P_mu[..], jz_mean, jz_var,
    jz_mean_squared, jz2_mean (and Px_mu[..] on request) plus the sidecar
    `<name>.meta.json` holding the resolved config, when `output_dir` is set.
    """

    p = cfg.params
    logger.info("Running %s: N=%d, modulation=%s", cfg.name, p.n_particles, p.modulation.value)

    trajectory = integrate_two_well(cfg)
    series = trajectory_timeseries(
        trajectory, x_basis=cfg.measure_x_basis, time_scale=time_scale(p.kappa)
    )
    statistics = compute_channels_statistics(
        series.frame, [*series.population_channels, "jz_mean", "jz_var"]
    )

    search = None
    if cfg.resonance_search is not None:
        search = nearest_exact_resonance(
            p, cfg.resonance_search.mu, span=cfg.resonance_search.span, n_max=cfg.n_max
        )
        logger.info("Closest resonance at omega=%g with n=%d", search.omega, search.n)

    metadata = {
        "preset": cfg.preset,
        "version": __version__,
        "integrator": INTEGRATOR,
        "tolerance": cfg.tolerance,
        "frame": cfg.frame.value,
        "time_unit": "1/kappa" if p.kappa > 0 else "1",
        "rows": series.frame.height,
        "config": cfg.model_dump(mode="json"),
        "resonance_search": search.model_dump() if search else None,
    }
    csv_path, metadata_path = _write_outputs(cfg.name, cfg.output_dir, series.frame, metadata)

    return RunResult(
        name=cfg.name,
        csv_path=csv_path,
        metadata_path=metadata_path,
        frame=series.frame,
        statistics=statistics,
        metadata=metadata,
        resonance_search=search,
    )


def run_lattice(cfg: LatticeExperimentConfig) -> RunResult:
    """
    Evolve a Fock state of the tilted lattice and tabulate the site means
    n_mean[l] and variances n_var[l].
    """

    p = cfg.params
    basis = basis_of(p)
    psi0 = fock_state(basis, cfg.initial_occupation)
    logger.info(
        "Running %s: L=%d, N=%d, dim=%d", cfg.name, p.n_sites, p.n_particles, basis.dimension
    )

    metadata_run = {"frame": cfg.frame.value, "n_max": cfg.n_max}
    if cfg.frame == IntegrationFrame.LAB:
        trajectory = evolve(
            bh_evaluator(p, basis), psi0.amplitudes, cfg.times, cfg.tolerance, metadata_run
        )
        amplitudes = trajectory.amplitudes
    else:
        evaluator = bh_sideband(p, basis, n_max=cfg.n_max, exact=cfg.n_max is None)
        trajectory = evolve(evaluator, psi0.amplitudes, cfg.times, cfg.tolerance, metadata_run)
        phases = np.array([bh_frame_phases(p, t, basis) for t in trajectory.times])
        amplitudes = phases * trajectory.amplitudes

    probabilities = np.abs(amplitudes) ** 2
    occupations = basis.occupations.astype(np.float64)
    means = probabilities @ occupations
    variances = probabilities @ occupations**2 - means**2

    columns = {TIME_COLUMN: trajectory.times * time_scale(p.kappa)}
    for site in range(p.n_sites):
        columns[f"n_mean[{site}]"] = means[:, site]
    for site in range(p.n_sites):
        columns[f"n_var[{site}]"] = variances[:, site]
    frame = pl.DataFrame(columns)

    statistics = compute_channels_statistics(frame, [c for c in frame.columns if c != TIME_COLUMN])
    metadata = {
        "preset": cfg.preset,
        "version": __version__,
        "integrator": INTEGRATOR,
        "tolerance": cfg.tolerance,
        "frame": cfg.frame.value,
        "time_unit": "1/kappa" if p.kappa > 0 else "1",
        "rows": frame.height,
        "dimension": basis.dimension,
        "config": cfg.model_dump(mode="json"),
    }
    csv_path, metadata_path = _write_outputs(cfg.name, cfg.output_dir, frame, metadata)

    return RunResult(
        name=cfg.name,
        csv_path=csv_path,
        metadata_path=metadata_path,
        frame=frame,
        statistics=statistics,
        metadata=metadata,
    )


def _sweep_points(cfg: ScanConfig) -> list[dict[str, float]]:
    if not cfg.axes or any(not axis.values for axis in cfg.axes):
        raise DomainError("A scan needs at least one non-empty sweep axis.")

    names = [axis.parameter for axis in cfg.axes]
    return [dict(zip(names, values)) for values in itertools.product(*(a.values for a in cfg.axes))]


def _sweep_params(model: type[T], base: BaseModel, point: dict[str, float]) -> T:
    try:
        return model.model_validate({**base.model_dump(), **point})
    except ValidationError as e:
        raise ConfigError(f"Invalid sweep point {point}:\n{e}") from e


def _two_well_rows(cfg: ScanConfig, point: dict[str, float]) -> list[dict[str, Any]]:
    p = _sweep_params(TwoWellParams, cfg.params, point)
    amplitude = {
        "omega": p.omega,
        "epsilon0": p.epsilon0,
        "epsilon1": p.epsilon1,
        "delta0": p.delta0,
        "delta1": p.delta1,
        "kappa": p.kappa,
    }
    return [
        {**amplitude, **hit.model_dump()}
        for hit in find_resonances(p, n_max=cfg.n_max, threshold=cfg.threshold)
    ]


def _lattice_rows(cfg: ScanConfig, point: dict[str, float]) -> list[dict[str, Any]]:
    unknown = set(point) - set(LatticeParams.model_fields)
    if unknown:
        raise ConfigError(f"Lattice scans cannot sweep {', '.join(sorted(unknown))}.")

    p = _sweep_params(LatticeParams, cfg.lattice, point)
    n_max = cfg.n_max if cfg.n_max is not None else default_n_max(p.bessel_argument)
    rows = []
    for p_occ, q_occ in cfg.pairs:
        for hit in lattice_resonance(p_occ, q_occ, p.epsilon0, p.omega, p.kappa, n_max):
            rows.append(
                {
                    "omega": p.omega,
                    "epsilon0": p.epsilon0,
                    "epsilon1": p.epsilon1,
                    "kappa": p.kappa,
                    "p": p_occ,
                    "q": q_occ,
                    **hit.model_dump(),
                }
            )
    return rows


def scan(cfg: ScanConfig, threads: int = 1) -> ScanResult:
    """
    Tabulate resonances over every point of the sweep grid.

    Points are evaluated by a pool of `threads` workers; rows are joined in
    grid order and sorted by the swept parameters, then |detuning|, μ and n.

    Raises:
        DomainError: If a sweep axis is missing or empty.
    """

    points = _sweep_points(cfg)
    if cfg.mode == "twowell" and cfg.params.modulation == Modulation.NONE:
        raise DomainError("A two-well scan needs a modulated system.")

    worker = _two_well_rows if cfg.mode == "twowell" else _lattice_rows
    schema = SCAN_SCHEMA if cfg.mode == "twowell" else LATTICE_SCAN_SCHEMA
    logger.info("Scanning %d points with %d threads", len(points), threads)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        chunks = list(pool.map(lambda point: worker(cfg, point), points))

    rows = [row for chunk in chunks for row in chunk]
    keys = [axis.parameter for axis in cfg.axes]
    order = [*keys, pl.col("detuning").abs()]
    order += ["mu", "n"] if cfg.mode == "twowell" else ["p", "q", "n"]
    table = pl.DataFrame(rows, schema=schema).sort(order)

    csv_path = None
    if cfg.output_dir is not None:
        csv_path = write_csv(table, Path(cfg.output_dir) / f"{cfg.name}.csv")
        logger.info("Wrote %s", csv_path)

    return ScanResult(name=cfg.name, csv_path=csv_path, table=table, points=len(points))
