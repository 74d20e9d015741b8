"""Pseudo-symmetry, pseudo-symplecticity and order probes.

The linear probes work on the exact polynomial step matrix of the harmonic
oscillator; the nonlinear probe measures psi_(-h)(psi_h(x0)) - x0 directly.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from analysis.convergence import fit_slope, state_distance
from config.settings import DEFAULT_POLY_DEGREE, POLY_SIGNIFICANCE
from data.models import MethodSpec, ProbeReport, State
from engine.integrator import composition_step
from engine.split_system import SplitSystem
from problems.polynomial import HPolynomialMatrix, ho_exact_taylor, ho_step_polynomial
from utils.errors import IntegrationError

logger = logging.getLogger(__name__)


def growth_scales(spec: MethodSpec, degree: int) -> np.ndarray:
    """(sum |alpha_j|)^k / k!, the size the degree-k coefficients grow to."""
    total = float(sum(abs(a) for a in spec.set.alphas))
    return np.array([total ** k / math.factorial(k) for k in range(degree + 1)])


def first_significant_degree(defects: np.ndarray, scales: np.ndarray) -> Tuple[Optional[int], Optional[float]]:
    """Smallest degree whose defect exceeds the relative significance threshold.

    Args:
        defects: Magnitude of the defect coefficient at each degree.
        scales: Natural size of a coefficient at each degree, see growth_scales.

    Returns:
        (degree, magnitude) or (None, None) when nothing is significant.
    """
    for n, magnitude in enumerate(defects):
        if magnitude > POLY_SIGNIFICANCE * scales[n]:
            return n, float(magnitude)
    return None, None


def _degree_report(probe: str, spec: MethodSpec, degree: int, defects: np.ndarray, scales: np.ndarray) -> ProbeReport:
    first, magnitude = first_significant_degree(defects, scales)
    report = ProbeReport(
        probe=probe,
        method=spec.name,
        grid=list(range(degree + 1)),
        defects=[float(d) for d in defects],
        first_degree=first,
        trigger_magnitude=magnitude,
        saturated=first is None,
        parameters={"max_degree": degree, "threshold": POLY_SIGNIFICANCE},
    )
    logger.info(f"{probe} {spec.name}: {report.summary()}")
    return report


def symmetry_defect(step: HPolynomialMatrix) -> HPolynomialMatrix:
    """P(-h) P(h) - I."""
    return step.negated_argument() @ step - HPolynomialMatrix.identity(step.degree)


def pseudo_symmetry_degree(spec: MethodSpec, degree: int = DEFAULT_POLY_DEGREE) -> ProbeReport:
    """First degree at which the projected step fails to be time-symmetric.

    A first degree q + 1 means pseudo-symmetry order q. Real palindromic
    methods are exactly symmetric and report a saturated probe.
    """
    step = ho_step_polynomial(spec, degree, projected=True)
    defect = symmetry_defect(step)
    return _degree_report("symmetry", spec, degree, defect.coefficient_norms(), growth_scales(spec, degree))


def readout_symmetry_degree(spec: MethodSpec, degree: int = DEFAULT_POLY_DEGREE) -> ProbeReport:
    """Same probe for the complex map projected only at readout: Re(M(-h) M(h)) - I."""
    step = ho_step_polynomial(spec, degree, projected=False)
    defect = (step.negated_argument() @ step).real_part() - HPolynomialMatrix.identity(degree)
    return _degree_report("readout-symmetry", spec, degree, defect.coefficient_norms(), growth_scales(spec, degree))


def pseudo_symplecticity_degree(spec: MethodSpec, degree: int = DEFAULT_POLY_DEGREE) -> ProbeReport:
    """First degree at which det P(h) departs from 1 for the projected step."""
    step = ho_step_polynomial(spec, degree, projected=True)
    det = step.determinant()
    det[0] -= 1.0
    return _degree_report("symplecticity", spec, degree, np.abs(det), growth_scales(spec, degree))


def linear_order_degree(spec: MethodSpec, degree: int = DEFAULT_POLY_DEGREE) -> ProbeReport:
    """First degree at which the projected step departs from the exact rotation.

    The linear order of the method is one less than the reported degree.
    """
    step = ho_step_polynomial(spec, degree, projected=True)
    defect = step - ho_exact_taylor(degree)
    return _degree_report("linear-order", spec, degree, defect.coefficient_norms(), growth_scales(spec, degree))


def nonlinear_symmetry_probe(
    system: SplitSystem,
    spec: MethodSpec,
    h_grid: Sequence[float],
    x0: State,
) -> ProbeReport:
    """Slope of |psi_(-h)(psi_h(x0)) - x0| against h; expected q + 1.

    Raises:
        IntegrationError: If a step leaves the analyticity domain.
    """
    x0 = x0.projected()
    defects = []
    for h in h_grid:
        try:
            forward = composition_step(system, spec, h, x0)
            back = composition_step(system, spec, -h, forward)
        except IntegrationError as e:
            raise e.at_step(1)
        defects.append(state_distance(back.projected(), x0))
    norm = float(np.max(np.abs(x0.as_vector())))
    return fit_slope(h_grid, defects, probe="nonlinear-symmetry", method=spec.name, state_norm=norm)
