"""Gauss-Newton iteration on the symmetric-conjugate order conditions.

A symmetric-conjugate sequence of s stages is described by s reals::

    [Re a1, Im a1, Re a2, Im a2, ..., (a_mid)]

the first floor(s/2) stages as (real, imaginary) pairs followed by the real
middle stage when s is odd. The remaining stages are the conjugate mirror
image, so the constraint a_(s+1-j) = conj(a_j) holds exactly for every
parameter vector.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Sequence

import numpy as np

from config.settings import (
    ACCEPT_RESIDUAL_TOL,
    MAX_CLOSED_FORM_ORDER,
    NEWTON_DIVERGENCE_LIMIT,
    NEWTON_FD_STEP,
    NEWTON_MAX_ITER,
    NEWTON_RESIDUAL_TOL,
    NEWTON_STEP_TOL,
    POLISH_BASIN_TOL,
)
from coefficients.order_conditions import eval_order_conditions
from data.models import CoefficientSet, ComplexCoefficient, Symmetry
from utils.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


@dataclass
class NewtonResult:
    params: np.ndarray
    residual: float
    iterations: int
    converged: bool
    diverged: bool = False


def params_to_alphas(params: Sequence[float]) -> List[complex]:
    """Expand a parameter vector into the full sequence in application order."""
    x = np.asarray(params, dtype=float)
    s = x.shape[0]
    if s < 1:
        raise DomainError("parameter vector is empty")
    head = [complex(x[2 * j], x[2 * j + 1]) for j in range(s // 2)]
    alphas = list(head)
    if s % 2:
        alphas.append(complex(x[-1], 0.0))
    alphas.extend(a.conjugate() for a in reversed(head))
    return alphas


def set_to_params(coefficient_set: CoefficientSet) -> np.ndarray:
    """Free parameters of a symmetric-conjugate set."""
    if coefficient_set.symmetry not in (Symmetry.SYMMETRIC_CONJUGATE, Symmetry.BOTH):
        raise DomainError(f"{coefficient_set.name} is not symmetric-conjugate")
    alphas = coefficient_set.alphas
    s = len(alphas)
    values = []
    for a in alphas[: s // 2]:
        values.extend((a.real, a.imag))
    if s % 2:
        values.append(alphas[s // 2].real)
    return np.array(values, dtype=float)


def conjugate_params(params: np.ndarray) -> np.ndarray:
    """Parameters of the conjugate family member."""
    flipped = np.array(params, dtype=float, copy=True)
    pairs = flipped.shape[0] // 2
    flipped[1 : 2 * pairs : 2] *= -1.0
    return flipped


def residual_vector(params: Sequence[float], target_order: int) -> np.ndarray:
    """Order-condition residuals that do not vanish by symmetry alone.

    For symmetric-conjugate sequences the odd-degree residues are real and w41
    is pure imaginary, so only their nonzero parts are kept.

    Args:
        params: Free parameters, see the module docstring.
        target_order: Order to reach, 1..5.

    Returns:
        [Re w1 - 1], then Re w31 (order >= 3), Im w41 (>= 4), Re w51 and
        Re w52 (= 5).

    Raises:
        DomainError: If the order has no closed-form conditions.
    """
    if not 1 <= target_order <= MAX_CLOSED_FORM_ORDER:
        raise DomainError(f"closed-form order conditions exist only up to order {MAX_CLOSED_FORM_ORDER}, got {target_order}")
    w = eval_order_conditions(params_to_alphas(params))
    values = [w.w1.real - 1.0]
    if target_order >= 3:
        values.append(w.w31.real)
    if target_order >= 4:
        values.append(w.w41.imag)
    if target_order >= 5:
        values.extend((w.w51.real, w.w52.real))
    return np.array(values, dtype=float)


def finite_difference_jacobian(params: np.ndarray, target_order: int, step: float = NEWTON_FD_STEP) -> np.ndarray:
    n = params.shape[0]
    columns = []
    for k in range(n):
        shift = np.zeros(n)
        shift[k] = step
        forward = residual_vector(params + shift, target_order)
        backward = residual_vector(params - shift, target_order)
        columns.append((forward - backward) / (2.0 * step))
    return np.column_stack(columns)


def newton_solve(params0: Sequence[float], target_order: int, max_iter: int = NEWTON_MAX_ITER) -> NewtonResult:
    """Gauss-Newton iteration from one starting point.

    Steps solve J dx = -F in the least-squares sense, which also covers the
    underdetermined systems of methods with more stages than conditions.
    """
    x = np.array(params0, dtype=float, copy=True)
    f = residual_vector(x, target_order)
    residual = float(np.max(np.abs(f)))

    for iteration in range(max_iter + 1):
        if residual < NEWTON_RESIDUAL_TOL:
            return NewtonResult(x, residual, iteration, converged=True)
        if iteration == max_iter:
            break

        jacobian = finite_difference_jacobian(x, target_order)
        dx, *_ = np.linalg.lstsq(jacobian, -f, rcond=None)
        x = x + dx
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > NEWTON_DIVERGENCE_LIMIT:
            return NewtonResult(x, np.inf, iteration + 1, converged=False, diverged=True)

        f = residual_vector(x, target_order)
        residual = float(np.max(np.abs(f)))
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"newton iter {iteration + 1}: residual {residual:.3e}, step {np.max(np.abs(dx)):.3e}")
        if np.max(np.abs(dx)) < NEWTON_STEP_TOL:
            return NewtonResult(x, residual, iteration + 1, converged=residual <= ACCEPT_RESIDUAL_TOL)

    return NewtonResult(x, residual, max_iter, converged=residual <= ACCEPT_RESIDUAL_TOL)


def polish(coefficient_set: CoefficientSet) -> CoefficientSet:
    """Refine a symmetric-conjugate set onto an exact root of its order conditions.

    The conditions used are those of min(composition_order, 5).

    Raises:
        DomainError: If the set is not symmetric-conjugate.
        ConvergenceError: If the set is outside the Newton basin (residual
            >= 1e-3) or the iteration does not reach an accepted residual.
    """
    target_order = min(coefficient_set.composition_order, MAX_CLOSED_FORM_ORDER)
    params = set_to_params(coefficient_set)

    initial = float(np.max(np.abs(residual_vector(params, target_order))))
    if initial >= POLISH_BASIN_TOL:
        raise ConvergenceError(f"{coefficient_set.name}: residual {initial:.3e} is outside the Newton basin")

    result = newton_solve(params, target_order)
    if result.diverged or not result.converged:
        raise ConvergenceError(
            f"{coefficient_set.name}: Newton stopped at residual {result.residual:.3e} after {result.iterations} iterations"
        )
    logger.info(f"Polished {coefficient_set.name}: residual {initial:.3e} -> {result.residual:.3e} in {result.iterations} iterations")

    if result.iterations == 0:
        return coefficient_set
    return replace(
        coefficient_set,
        coeffs=tuple(ComplexCoefficient.from_complex(a) for a in params_to_alphas(result.params)),
    )
