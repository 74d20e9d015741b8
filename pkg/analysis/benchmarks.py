import logging
from typing import List, Optional, Sequence

import numpy as np

from analysis.convergence import state_distance
from data.models import DriftStatistics, MethodSpec, State, Trajectory, WorkPrecisionRow
from engine.integrator import integrate, step_count
from engine.split_system import SplitSystem
from problems.reference import reference_solution
from utils.errors import DomainError

logger = logging.getLogger(__name__)

METRICS = ("max_rel_energy", "avg_rel_energy", "avg_state_error")

# Windows used to follow the maximum of the energy error over the run
ENVELOPE_WINDOWS = 10


def _run(system: SplitSystem, spec: MethodSpec, h: float, t_final: float, x0: State, sample_every: int) -> Trajectory:
    trajectory = integrate(system, spec, h, t_final, x0, sample_every)
    if trajectory.error is not None:
        raise trajectory.error
    return trajectory


def energy_drift(
    system: SplitSystem,
    spec: MethodSpec,
    h: float,
    t_final: float,
    sample_every: int = 1,
    x0: Optional[State] = None,
) -> DriftStatistics:
    """Summarise the long-time behaviour of the relative energy error.

    Reports the maximum error over the first and last tenth of the samples and
    the slope of a linear fit to the per-window maxima (the error envelope),
    together with the scatter of those maxima about the fit.

    Raises:
        IntegrationError: Propagated from the run.
    """
    x0 = system.initial_state() if x0 is None else x0
    trajectory = _run(system, spec, h, t_final, x0, sample_every)
    errors = trajectory.energy_errors()[1:]
    times = trajectory.times()[1:]
    if errors.size == 0:
        return DriftStatistics(spec.name, h, t_final, 0.0, 0.0, 0.0, 0.0, 0)

    decile = max(1, errors.size // 10)
    first = float(np.max(errors[:decile]))
    last = float(np.max(errors[-decile:]))

    windows = min(ENVELOPE_WINDOWS, errors.size)
    maxima = np.array([np.max(chunk) for chunk in np.array_split(errors, windows)])
    centres = np.array([np.mean(chunk) for chunk in np.array_split(times, windows)])
    if windows >= 2:
        slope, intercept = np.polyfit(centres, maxima, 1)
        noise = float(np.std(maxima - (slope * centres + intercept)))
    else:
        slope, noise = 0.0, 0.0

    stats = DriftStatistics(
        method=spec.name,
        h=h,
        t_final=t_final,
        first_decile_max=first,
        last_decile_max=last,
        trend=float(slope),
        envelope_noise=noise,
        samples=int(errors.size),
    )
    logger.info(f"{spec.name} on {system.name}: first decile {first:.3e}, last decile {last:.3e}, trend {stats.trend:.3e}")
    return stats


def _metric_value(
    metric: str,
    system: SplitSystem,
    trajectory: Trajectory,
    h: float,
    t_final: float,
    x0: State,
    sample_every: int,
) -> float:
    errors = trajectory.energy_errors()
    if metric == "max_rel_energy":
        return float(np.max(errors))
    samples = trajectory.records[1:] or trajectory.records
    if metric == "avg_rel_energy":
        return float(np.mean([r.rel_energy_error for r in samples]))

    if system.has_exact_flow:
        reference_states = [system.exact_flow(x0, r.t).projected() for r in samples]
    else:
        reference = reference_solution(system, t_final, x0, h, sample_every)
        reference_records = reference.records[1:] or reference.records
        reference_states = [State.from_real(r.q, r.p) for r in reference_records]
    distances = [
        state_distance(State.from_real(r.q, r.p), ref) for r, ref in zip(samples, reference_states)
    ]
    return float(np.mean(distances))


def work_precision(
    system: SplitSystem,
    specs: Sequence[MethodSpec],
    h_grid: Sequence[float],
    t_final: float,
    metric: str = "max_rel_energy",
    sample_every: int = 1,
    x0: Optional[State] = None,
) -> List[WorkPrecisionRow]:
    """Error against cost, cost being stages times steps (base-step evaluations).

    Args:
        system: Benchmark problem.
        specs: Methods to compare.
        h_grid: Step sizes; each must divide t_final.
        t_final: Final time.
        metric: max_rel_energy, avg_rel_energy or avg_state_error.
        sample_every: Sampling stride for the averaged metrics.
        x0: Initial state; defaults to the system's own.

    Returns:
        One row per (method, h), methods in the given order.
    """
    if metric not in METRICS:
        raise DomainError(f"unknown metric '{metric}'; expected one of {', '.join(METRICS)}")
    x0 = (system.initial_state() if x0 is None else x0).projected()

    rows = []
    for spec in specs:
        for h in h_grid:
            steps = step_count(h, t_final)
            trajectory = _run(system, spec, h, t_final, x0, sample_every)
            value = _metric_value(metric, system, trajectory, h, t_final, x0, sample_every)
            rows.append(WorkPrecisionRow(spec.name, float(h), steps, steps * spec.stages, metric, value))
            logger.debug(f"{spec.name} h={h:.6g}: {metric} = {value:.3e}")
    logger.info(f"work-precision on {system.name}: {len(rows)} rows")
    return rows
