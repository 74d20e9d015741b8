"""Order-condition polynomials and structural checks on coefficient sequences.

Coefficients are indexed in application order: ``coeffs[0]`` is the first
sub-step applied to the state. All sums are evaluated with plain complex
arithmetic so that conjugating the input conjugates every output exactly.
"""

import math
from typing import Iterable, List, Sequence, Union

from config.settings import SYMMETRY_TOL
from data.models import ComplexCoefficient, OrderConditionResidues, Symmetry
from utils.errors import DomainError

CoefficientLike = Union[complex, float, ComplexCoefficient]


def as_complex_list(coeffs: Iterable[CoefficientLike]) -> List[complex]:
    """Normalise a coefficient sequence to a list of Python complex numbers."""
    values = []
    for c in coeffs:
        value = c.value if isinstance(c, ComplexCoefficient) else complex(c)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"non-finite coefficient {value}")
        values.append(value)
    return values


def eval_order_conditions(coeffs: Sequence[CoefficientLike]) -> OrderConditionResidues:
    """Evaluate the order-condition polynomials up to degree five.

    Args:
        coeffs: Step fractions in application order.

    Returns:
        The residues w1, w31, w41, w51, w52.

    Raises:
        DomainError: If the sequence is empty or holds a non-finite value.
    """
    alphas = as_complex_list(coeffs)
    s = len(alphas)
    if s == 0:
        raise DomainError("order conditions need at least one coefficient")

    cubes = [a * a * a for a in alphas]
    fourths = [(a * a) * (a * a) for a in alphas]
    fifths = [fourths[j] * alphas[j] for j in range(s)]

    # before[j] = sum_{k<j} alpha_k, after[j] = sum_{k>j} alpha_k (empty sums are zero)
    before = [0j] * s
    for j in range(1, s):
        before[j] = before[j - 1] + alphas[j - 1]
    after = [0j] * s
    after3 = [0j] * s
    for j in range(s - 2, -1, -1):
        after[j] = after[j + 1] + alphas[j + 1]
        after3[j] = after3[j + 1] + cubes[j + 1]

    w1 = sum(alphas, 0j)
    w31 = sum(cubes, 0j)
    w51 = sum(fifths, 0j)

    w41 = 0j
    for j in range(s - 1):
        w41 += cubes[j] * after[j] - alphas[j] * after3[j]
    w41 = 0.5 * w41

    cubic_part = 0j
    quartic_part = 0j
    for j in range(s):
        cubic_part += cubes[j] * (before[j] * before[j] + after[j] * after[j] - 4.0 * (before[j] * after[j]))
        quartic_part += fourths[j] * (before[j] + after[j])
    w52 = cubic_part / 12.0 - quartic_part / 12.0

    return OrderConditionResidues(w1=w1, w31=w31, w41=w41, w51=w51, w52=w52)


def classify_symmetry(coeffs: Sequence[CoefficientLike], tol: float) -> Symmetry:
    """Classify a sequence as palindromic, symmetric-conjugate, both or neither.

    Args:
        coeffs: Step fractions in application order.
        tol: Component-wise tolerance.

    Returns:
        The satisfied pattern; real palindromic sequences are ``Symmetry.BOTH``.
    """
    alphas = as_complex_list(coeffs)
    if not alphas:
        raise DomainError("cannot classify an empty sequence")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    s = len(alphas)
    palindromic = True
    conjugate = True
    for j in range(s):
        a, b = alphas[j], alphas[s - 1 - j]
        if abs(a.real - b.real) > tol:
            palindromic = conjugate = False
            break
        if abs(a.imag - b.imag) > tol:
            palindromic = False
        if abs(a.imag + b.imag) > tol:
            conjugate = False

    if palindromic and conjugate:
        return Symmetry.BOTH
    if palindromic:
        return Symmetry.PALINDROMIC
    if conjugate:
        return Symmetry.SYMMETRIC_CONJUGATE
    return Symmetry.NONE


def structural_tolerance(stages: int) -> float:
    return SYMMETRY_TOL * max(stages, 1)


def parity_violations(coeffs: Sequence[CoefficientLike], symmetry: Symmetry) -> dict:
    """Magnitudes that must vanish for the given pattern.

    Symmetric-conjugate sequences have real odd-degree residues and a pure
    imaginary w41; palindromic sequences have w41 = 0.
    """
    w = eval_order_conditions(coeffs)
    violations = {}
    if symmetry in (Symmetry.SYMMETRIC_CONJUGATE, Symmetry.BOTH):
        violations.update({
            "Im w1": abs(w.w1.imag),
            "Im w31": abs(w.w31.imag),
            "Re w41": abs(w.w41.real),
            "Im w51": abs(w.w51.imag),
            "Im w52": abs(w.w52.imag),
        })
    if symmetry in (Symmetry.PALINDROMIC, Symmetry.BOTH):
        violations["|w41|"] = abs(w.w41)
    return violations
