import logging
import math
from typing import Sequence

import numpy as np

from coefficients.order_conditions import CoefficientLike, as_complex_list
from data.models import CoefficientSet, ErrorModel
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def scaled_error_coefficient(coeffs: Sequence[CoefficientLike], j: int) -> float:
    """Return s^(j-1) |sum_k alpha_k^j| for a coefficient sequence.

    The s^(j-1) factor rescales the coefficient to a per-stage step so methods
    with different stage counts compare at equal cost.
    """
    alphas = as_complex_list(coeffs)
    if not alphas:
        raise DomainError("error coefficient needs at least one coefficient")
    if j < 1:
        raise DomainError(f"power must be positive, got {j}")
    s = len(alphas)
    return float(s ** (j - 1) * abs(sum((a ** j for a in alphas), 0j)))


def effective_error_terms(coefficient_set: CoefficientSet) -> ErrorModel:
    """Build the two-term effective error model of a projected method.

    Args:
        coefficient_set: A set whose projected order r is even and at least 4.

    Returns:
        ErrorModel with e_lo = e_(r+1), e_hi = e_(r+3) and the elbow step
        h* = sqrt(e_lo / e_hi).

    Raises:
        DomainError: If the projected order is odd or below 4.
    """
    r = coefficient_set.projected_order
    if r % 2 or r < 4:
        raise DomainError(f"{coefficient_set.name}: effective error needs an even projected order >= 4, got {r}")

    e_lo = scaled_error_coefficient(coefficient_set.coeffs, r + 1)
    e_hi = scaled_error_coefficient(coefficient_set.coeffs, r + 3)
    elbow = math.sqrt(e_lo / e_hi) if e_hi > 0 else math.inf
    logger.debug(f"{coefficient_set.name}: e{r + 1}={e_lo:.6g}, e{r + 3}={e_hi:.6g}, h*={elbow:.6g}")
    return ErrorModel(projected_order=r, e_lo=e_lo, e_hi=e_hi, elbow=elbow, scaled=True)


def effective_error_curve(model: ErrorModel, h):
    """Evaluate E(h) = h^r e_lo + h^(r+2) e_hi at a scalar or an array of steps."""
    h_arr = np.asarray(h, dtype=float)
    if np.any(h_arr <= 0):
        raise DomainError("effective error curve needs h > 0")
    r = model.projected_order
    values = h_arr ** r * model.e_lo + h_arr ** (r + 2) * model.e_hi
    if values.ndim == 0:
        return float(values)
    return values


def basic_error_model() -> ErrorModel:
    """The normalising model of the basic second-order scheme."""
    return ErrorModel(projected_order=2, e_lo=1.0, e_hi=1.0, elbow=1.0, scaled=True)
