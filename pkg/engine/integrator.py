"""Composition integrators built on the drift-kick-drift leapfrog."""

import logging
from typing import List

import numpy as np

from data.models import BaseKind, MethodSpec, Projection, State, Trajectory, TrajectoryRecord
from engine.split_system import SplitSystem
from utils.errors import DomainError, IntegrationError

logger = logging.getLogger(__name__)

# Relative slack when checking that t_final is a whole number of steps
STEP_COUNT_TOL = 1e-9


def base_step(system: SplitSystem, state: State, tau: complex, base: BaseKind = BaseKind.LEAPFROG_DKD) -> State:
    """One leapfrog step: half drift, full kick, half drift.

    Raises:
        IntegrationError: If the kick would be evaluated outside the domain
            where the potential is analytic.
    """
    if base is not BaseKind.LEAPFROG_DKD:
        raise DomainError(f"unsupported base scheme {base}")
    if tau == 0:
        return state
    half = 0.5 * tau
    state = system.drift(state, half)
    system.check_domain(state)
    state = system.kick(state, tau)
    return system.drift(state, half)


def composition_step(system: SplitSystem, spec: MethodSpec, h: float, state: State) -> State:
    """Apply the stages with tau = alpha_j h in application order.

    Under per-step projection the imaginary parts are dropped on return.
    """
    if h == 0:
        return state
    for alpha in spec.set.alphas:
        state = base_step(system, state, alpha * h, spec.base)
    if not state.is_finite():
        raise IntegrationError("state is no longer finite", state=state)
    if spec.projection is Projection.PER_STEP:
        return state.projected()
    return state


def step_count(h: float, t_final: float) -> int:
    """Number of steps n with t_final = n h.

    Raises:
        DomainError: If t_final is negative or not an integer multiple of h.
    """
    if t_final < 0:
        raise DomainError(f"t_final must be non-negative, got {t_final}")
    if t_final == 0:
        return 0
    if h <= 0:
        raise DomainError(f"step size must be positive, got {h}")
    ratio = t_final / h
    n = int(round(ratio))
    if n < 1 or abs(ratio - n) > STEP_COUNT_TOL * max(1.0, ratio):
        raise DomainError(f"t_final = {t_final} is not an integer multiple of h = {h} ({ratio} steps)")
    return n


def relative_energy_error(energy: float, reference: float) -> float:
    if reference == 0:
        return abs(energy - reference)
    return abs(energy - reference) / abs(reference)


def integrate(
    system: SplitSystem,
    spec: MethodSpec,
    h: float,
    t_final: float,
    x0: State,
    sample_every: int = 1,
) -> Trajectory:
    """Integrate from a real initial state and sample the trajectory.

    Records are taken at step 0, every ``sample_every`` steps and at the last
    step. Each record holds the real-projected state and |H - H0| / |H0|
    (the absolute error when H0 = 0). Under final-only projection the
    propagated state stays complex and only the records are projected.

    Args:
        system: The split system.
        spec: Coefficients, base scheme and projection policy.
        h: Step size.
        t_final: Final time, an integer multiple of h.
        x0: Initial state; imaginary parts are discarded.
        sample_every: Sampling stride in steps.

    Returns:
        The trajectory. On a domain violation the records up to the failing
        step are kept and ``error`` holds the IntegrationError.

    Raises:
        DomainError: If the step count is not an integer or sample_every < 1.
    """
    if sample_every < 1:
        raise DomainError(f"sample_every must be positive, got {sample_every}")
    n = step_count(h, t_final)

    state = x0.projected()
    h0 = system.energy(state)
    records: List[TrajectoryRecord] = [_record(system, 0, 0.0, state, h0)]

    t = 0.0
    compensation = 0.0
    for k in range(1, n + 1):
        try:
            state = composition_step(system, spec, h, state)
        except IntegrationError as e:
            error = e.at_step(k)
            logger.error(f"{spec.name} on {system.name}: {error}")
            return Trajectory(records, state, error)

        # compensated summation of the step size
        y = h - compensation
        total = t + y
        compensation = (total - t) - y
        t = total

        if k % sample_every == 0 or k == n:
            records.append(_record(system, k, t, state.projected(), h0))

    if spec.projection is Projection.FINAL_ONLY:
        state = state.projected()
    return Trajectory(records, state)


def _record(system: SplitSystem, step: int, t: float, real_state: State, h0: float) -> TrajectoryRecord:
    return TrajectoryRecord(
        step=step,
        t=t,
        q=np.real(real_state.q).copy(),
        p=np.real(real_state.p).copy(),
        rel_energy_error=relative_energy_error(system.energy(real_state), h0),
    )


def trajectory_rows(trajectory: Trajectory) -> List[List[float]]:
    """Rows t, q1..qd, p1..pd, rel_energy_error for CSV output."""
    return [[r.t, *r.q.tolist(), *r.p.tolist(), r.rel_energy_error] for r in trajectory.records]


def trajectory_header(dim: int) -> List[str]:
    return ["t"] + [f"q{i + 1}" for i in range(dim)] + [f"p{i + 1}" for i in range(dim)] + ["rel_energy_error"]
