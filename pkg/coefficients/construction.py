import cmath
import logging
from dataclasses import replace
from typing import Optional

from data.models import CoefficientSet, ComplexCoefficient, Symmetry
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def construct_triple_jump(k: int) -> CoefficientSet:
    """Build the three-stage palindromic fourth-order composition.

    Args:
        k: Branch index; 0 gives the real solution, 1 and 2 the complex pair.

    Returns:
        The set (a1, 1 - 2 a1, a1) with a1 = 1 / (2 - 2^(1/3) exp(2 i k pi / 3)).

    Raises:
        DomainError: If k is not 0, 1 or 2.
    """
    if k not in (0, 1, 2):
        raise DomainError(f"triple-jump branch must be 0, 1 or 2, got {k}")

    if k == 0:
        a1 = complex(1.0 / (2.0 - 2.0 ** (1.0 / 3.0)))
    else:
        a1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0) * cmath.exp(2j * k * cmath.pi / 3.0))
    a2 = 1.0 - 2.0 * a1
    outer = ComplexCoefficient.from_complex(a1)
    middle = ComplexCoefficient.from_complex(a2)

    real = k == 0
    return CoefficientSet(
        name="PR3" if real else ("PC3" if k == 1 else "PC3*"),
        stages=3,
        composition_order=4,
        projected_order=4,
        pseudo_symmetry_order=predicted_pseudo_symmetry_order(4, Symmetry.PALINDROMIC, real=real),
        symmetry=Symmetry.PALINDROMIC,
        coeffs=(outer, middle, outer),
        provenance=f"triple jump, a1 = 1/(2 - 2^(1/3) e^(2i*{k}*pi/3))",
    )


def conjugate_set(coefficient_set: CoefficientSet) -> CoefficientSet:
    """Return the member of the conjugate family: every step fraction conjugated."""
    name = coefficient_set.name[:-1] if coefficient_set.name.endswith("*") else coefficient_set.name + "*"
    return replace(
        coefficient_set,
        name=name,
        coeffs=tuple(c.conjugate() for c in coefficient_set.coeffs),
    )


def predicted_pseudo_symmetry_order(composition_order: int, symmetry: Symmetry, real: bool = False) -> Optional[int]:
    """Pseudo-symmetry order of the per-step projected method.

    Args:
        composition_order: Order of the complex composition itself.
        symmetry: Coefficient pattern.
        real: Whether all coefficients are real.

    Returns:
        The predicted order, or None when the method is exactly time-symmetric.
    """
    r = composition_order
    if symmetry is Symmetry.BOTH or (real and symmetry is Symmetry.PALINDROMIC):
        return None
    if symmetry is Symmetry.PALINDROMIC and r >= 4 and r % 2 == 0:
        return 2 * r + 1
    if symmetry is Symmetry.SYMMETRIC_CONJUGATE and r >= 3:
        if r % 2 == 1:
            return 2 * (r + 1) - 1
        return 2 * r + 3
    return r


def projected_order_for(composition_order: int, symmetry: Symmetry) -> int:
    """Order of the per-step projected method.

    Odd-order symmetric-conjugate compositions gain one order on projection.
    """
    if symmetry is Symmetry.SYMMETRIC_CONJUGATE and composition_order >= 3 and composition_order % 2 == 1:
        return composition_order + 1
    return max(composition_order, 2)
