"""Tabulated order-condition counts for compositions of a symmetric base scheme."""

from typing import Tuple, Union

from data.models import Symmetry
from utils.errors import DomainError

GENERAL = "general"
PALINDROMIC = "palindromic"
SYMMETRIC_CONJUGATE = "symmetric_conjugate"

# Total number of conditions N^[r] for orders 1..8, as tabulated.
GENERAL_COUNTS = {1: 1, 2: 0, 3: 2, 4: 3, 5: 5, 6: 7, 7: 11, 8: 16}
PALINDROMIC_COUNTS = {2: 1, 4: 2, 6: 4, 8: 8}
SYMMETRIC_CONJUGATE_COUNTS = {2: 1, 4: 2, 6: 5, 8: 11}
# Order 8 only needs 9 once the order-6 imaginary conditions are dropped.
SYMMETRIC_CONJUGATE_EFFECTIVE = {2: 1, 4: 2, 6: 5, 8: 9}

# Dimension c(n) of the degree-n component of the free Lie algebra on {F, Y3, Y5, ...}.
LIE_DIMENSIONS = {1: 1, 2: 0, 3: 1, 4: 1, 5: 2, 6: 2, 7: 4, 8: 5}


def _family_name(family: Union[str, Symmetry]) -> str:
    if isinstance(family, Symmetry):
        if family is Symmetry.NONE:
            return GENERAL
        if family is Symmetry.BOTH:
            return PALINDROMIC
        return family.value
    name = str(family).replace("-", "_").lower()
    if name not in (GENERAL, PALINDROMIC, SYMMETRIC_CONJUGATE):
        raise DomainError(f"unknown family '{family}'")
    return name


def order_condition_counts(order: int, family: Union[str, Symmetry], effective: bool = True) -> int:
    """Number of order conditions to reach a given order after per-step projection.

    Args:
        order: Target order (1..8; even for palindromic and symmetric-conjugate).
        family: 'general', 'palindromic' or 'symmetric_conjugate'.
        effective: For symmetric-conjugate order 8, return the 9 conditions that
            suffice rather than the 11 of the full count.

    Raises:
        DomainError: If the query falls outside the table.
    """
    name = _family_name(family)
    if name == GENERAL:
        table = GENERAL_COUNTS
    elif name == PALINDROMIC:
        table = PALINDROMIC_COUNTS
    else:
        table = SYMMETRIC_CONJUGATE_EFFECTIVE if effective else SYMMETRIC_CONJUGATE_COUNTS
    if order not in table:
        raise DomainError(f"no tabulated count for order {order} in family '{name}'")
    return table[order]


def lie_dimension(n: int) -> int:
    """Dimension c(n) for n in 1..8."""
    if n not in LIE_DIMENSIONS:
        raise DomainError(f"c({n}) is only tabulated for n in 1..8")
    return LIE_DIMENSIONS[n]


def reduced_condition_count(order: int, dropped: int) -> Tuple[int, int]:
    """Conditions left for a symmetric-conjugate method when imaginary levels are dropped.

    Dropping the conditions at degrees 2n, 2n-2, ..., 2n-2q (all pure imaginary)
    keeps the projected order 2n at the price of pseudo-symmetry order 4n-(4q+1).

    Args:
        order: Even target order 2n.
        dropped: q >= 0, the number of additional even levels dropped beyond 2n.

    Returns:
        (condition count, pseudo-symmetry order).
    """
    if order % 2 or order not in GENERAL_COUNTS:
        raise DomainError(f"order must be even and tabulated, got {order}")
    if dropped < 0 or order <= 4 * dropped + 1:
        raise DomainError(f"dropping {dropped} extra levels is not admissible at order {order}")
    count = GENERAL_COUNTS[order] - sum(lie_dimension(order - 2 * j) for j in range(dropped + 1))
    return count, 2 * order - (4 * dropped + 1)


def minimum_stages(order: int, family: Union[str, Symmetry]) -> int:
    """Fewest stages that give as many free parameters as conditions."""
    name = _family_name(family)
    count = order_condition_counts(order, name)
    if name == PALINDROMIC:
        return 2 * count - 1
    return count
