import logging

import numpy as np

from config.settings import (
    STABILITY_BISECTION_TOL,
    STABILITY_GROWTH_TOL,
    STABILITY_SCAN_FACTOR,
    STABILITY_SCAN_STEP,
)
from data.models import MethodSpec, Projection, StabilityReport
from problems.polynomial import ho_step_matrix

logger = logging.getLogger(__name__)


def spectral_radius(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


def half_trace(matrix: np.ndarray) -> float:
    return abs(float(np.real(np.trace(matrix)))) / 2.0


def is_unstable(spec: MethodSpec, h: float) -> bool:
    """Whether repeated oscillator steps of size h grow without bound.

    With per-step projection the propagated map is the real matrix Re M(h)
    and the classical criterion |tr Re M(h)| / 2 > 1 applies. Without it the
    complex matrix M(h) itself is propagated and its spectral radius decides.
    """
    if spec.projection is Projection.PER_STEP:
        return half_trace(ho_step_matrix(spec, h, projected=True)) > 1.0 + STABILITY_GROWTH_TOL
    return spectral_radius(ho_step_matrix(spec, h, projected=False)) > 1.0 + STABILITY_GROWTH_TOL


def stability_limit(spec: MethodSpec) -> StabilityReport:
    """Largest h for which repeated oscillator steps stay bounded.

    Scans h = k * 1e-3 up to the first unstable step, then bisects that
    bracket to 1e-8. The propagated map follows ``spec.projection``: Re M(h)
    for per-step projection, M(h) for final-only and none, which both carry
    the complex state. When no instability is met below 10 s the report is
    marked unbounded.

    Args:
        spec: Method and projection policy.

    Returns:
        StabilityReport with h_t and h_t / s.
    """
    s = spec.stages
    limit = STABILITY_SCAN_FACTOR * s
    k = 1
    while True:
        h = k * STABILITY_SCAN_STEP
        if h > limit:
            logger.warning(f"{spec.name}: no instability found below h = {limit}")
            return StabilityReport(
                method=spec.name,
                stages=s,
                h_t=float("inf"),
                h_t_per_stage=float("inf"),
                scan_step=STABILITY_SCAN_STEP,
                bisection_tol=STABILITY_BISECTION_TOL,
                unbounded=True,
            )
        if is_unstable(spec, h):
            break
        k += 1

    lo, hi = (k - 1) * STABILITY_SCAN_STEP, h
    while hi - lo > STABILITY_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if is_unstable(spec, mid):
            hi = mid
        else:
            lo = mid
        logger.debug(f"{spec.name}: bracket [{lo:.10f}, {hi:.10f}]")
    h_t = 0.5 * (lo + hi)
    logger.info(f"{spec.name} ({spec.projection.value}): h_t = {h_t:.6f}, h_t/s = {h_t / s:.4f}")
    return StabilityReport(
        method=spec.name,
        stages=s,
        h_t=h_t,
        h_t_per_stage=h_t / s,
        scan_step=STABILITY_SCAN_STEP,
        bisection_tol=STABILITY_BISECTION_TOL,
    )
