import logging
import sys
from typing import Optional, Sequence

import numpy as np

from config.settings import MIN_FIT_POINTS, NOISE_EPS_FACTOR, NOISE_FLOOR
from data.models import MethodSpec, Projection, ProbeReport, State
from engine.integrator import composition_step, integrate, step_count
from engine.split_system import SplitSystem
from problems.reference import reference_final_state
from utils.errors import DomainError, IntegrationError

logger = logging.getLogger(__name__)


def geometric_grid(start: float, stop: float, count: int) -> np.ndarray:
    """``count`` geometrically spaced values from start to stop inclusive."""
    if start <= 0 or stop <= 0 or count < 1:
        raise DomainError(f"geometric grid needs positive bounds and count, got ({start}, {stop}, {count})")
    return np.geomspace(start, stop, count)


def fit_slope(
    h_values: Sequence[float],
    defects: Sequence[float],
    probe: str = "slope",
    method: str = "",
    state_norm: float = 0.0,
) -> ProbeReport:
    """Least-squares slope of log(defect) against log(h).

    Defects below 1e-12, within 100 machine epsilons of the state norm, or not
    finite are discarded first. Fewer than three survivors give an
    insufficient-signal report without a slope.
    """
    h_arr = np.asarray(h_values, dtype=float)
    d_arr = np.asarray(defects, dtype=float)
    if h_arr.shape != d_arr.shape:
        raise DomainError("h grid and defects differ in length")

    floor = max(NOISE_FLOOR, NOISE_EPS_FACTOR * sys.float_info.epsilon * state_norm)
    keep = np.isfinite(d_arr) & (d_arr > floor) & (h_arr > 0)
    discarded = int(np.count_nonzero(~keep))
    if discarded:
        logger.warning(f"{probe} {method}: discarded {discarded} of {len(h_arr)} points below the noise floor {floor:.1e}")

    report = ProbeReport(
        probe=probe,
        method=method,
        grid=h_arr.tolist(),
        defects=d_arr.tolist(),
        discarded=discarded,
        parameters={"noise_floor": floor},
    )
    if np.count_nonzero(keep) < MIN_FIT_POINTS:
        report.insufficient_signal = True
        return report

    x = np.log(h_arr[keep])
    y = np.log(d_arr[keep])
    (slope, intercept), residuals, *_ = np.polyfit(x, y, 1, full=True)
    report.slope = float(slope)
    report.fit_residual = float(np.sqrt(residuals[0] / len(x))) if len(residuals) else 0.0
    logger.info(f"{probe} {method}: slope {report.slope:.3f} from {len(x)} points")
    return report


def state_distance(a: State, b: State) -> float:
    return float(np.max(np.abs(a.as_vector() - b.as_vector()), initial=0.0))


def convergence_order(
    system: SplitSystem,
    spec: MethodSpec,
    h_grid: Sequence[float],
    t_final: float,
    x0: State,
    reference: Optional[State] = None,
) -> ProbeReport:
    """Slope of the global endpoint error against h.

    The reference is the exact flow when the system has one, otherwise the
    self-reference solution at the smallest h of the grid.

    Raises:
        IntegrationError: If a run leaves the analyticity domain.
    """
    x0 = x0.projected()
    if reference is None:
        reference = reference_final_state(system, x0, t_final, float(min(h_grid)))

    errors = []
    for h in h_grid:
        n = step_count(h, t_final)
        trajectory = integrate(system, spec, h, t_final, x0, sample_every=max(n, 1))
        if trajectory.error is not None:
            raise trajectory.error
        errors.append(state_distance(trajectory.final_state.projected(), reference))
    norm = float(np.max(np.abs(x0.as_vector())))
    return fit_slope(h_grid, errors, probe="order", method=spec.name, state_norm=norm)


def local_error_order(system: SplitSystem, spec: MethodSpec, h_grid: Sequence[float], x0: State) -> ProbeReport:
    """Slope of the one-step error against the exact flow.

    Under projection NONE the complex state is compared, otherwise its real
    part after one projected step.
    """
    if not system.has_exact_flow:
        raise DomainError(f"{system.name} has no exact flow for one-step errors")
    x0 = x0.projected()
    errors = []
    for h in h_grid:
        try:
            stepped = composition_step(system, spec, h, x0)
        except IntegrationError as e:
            raise e.at_step(1)
        if spec.projection is not Projection.NONE:
            stepped = stepped.projected()
        errors.append(state_distance(stepped, system.exact_flow(x0, h)))
    norm = float(np.max(np.abs(x0.as_vector())))
    return fit_slope(h_grid, errors, probe="local-order", method=spec.name, state_norm=norm)
