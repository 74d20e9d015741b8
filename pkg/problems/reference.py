import logging

import numpy as np

from config.settings import REFERENCE_METHOD, REFERENCE_STEP_DIVISOR, REFERENCE_VALIDATION_TOL
from coefficients.catalog import catalog_lookup
from data.models import MethodSpec, Projection, State, Trajectory
from engine.integrator import integrate
from engine.split_system import SplitSystem

logger = logging.getLogger(__name__)


def reference_spec() -> MethodSpec:
    return MethodSpec(catalog_lookup(REFERENCE_METHOD), projection=Projection.PER_STEP)


def reference_solution(
    system: SplitSystem,
    t_final: float,
    x0: State,
    h: float,
    sample_every: int = 1,
    validate: bool = False,
) -> Trajectory:
    """Self-reference trajectory on the sample grid of a run with step h.

    The reference uses the highest-order bundled method at h / 50, sampled
    every 50 * sample_every fine steps so its records line up with the coarse
    run. With ``validate`` the fine step is halved once more and a warning is
    logged when the records move by more than 1e-12.
    """
    divisor = REFERENCE_STEP_DIVISOR
    spec = reference_spec()
    reference = integrate(system, spec, h / divisor, t_final, x0, sample_every * divisor)
    if validate and reference.completed:
        finer = integrate(system, spec, h / (2 * divisor), t_final, x0, 2 * sample_every * divisor)
        change = max_state_difference(reference, finer)
        if change > REFERENCE_VALIDATION_TOL:
            logger.warning(f"reference for {system.name} moved by {change:.3e} when halving h_ref = {h / divisor:.3e}")
        else:
            logger.debug(f"reference for {system.name} validated, change {change:.3e}")
    return reference


def max_state_difference(first: Trajectory, second: Trajectory) -> float:
    """Largest componentwise difference between matching records."""
    count = min(len(first.records), len(second.records))
    worst = 0.0
    for a, b in zip(first.records[:count], second.records[:count]):
        worst = max(worst, float(np.max(np.abs(np.concatenate([a.q - b.q, a.p - b.p])), initial=0.0)))
    return worst


def reference_final_state(system: SplitSystem, x0: State, t_final: float, h: float) -> State:
    """Exact final state when the system has a closed-form flow, else the self-reference."""
    if system.has_exact_flow:
        return system.exact_flow(x0.projected(), t_final).projected()
    return reference_solution(system, t_final, x0, h, sample_every=max(1, int(round(t_final / h)))).final_state
