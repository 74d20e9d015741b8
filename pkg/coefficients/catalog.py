"""Bundled coefficient sets and their verification.

Symmetric-conjugate entries store the printed decimals of the first half of
the sequence; the second half is the conjugate mirror image. The conjugate
family member of any entry is obtained with ``conjugate_set``.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import CATALOG_RESIDUE_TOL
from coefficients.construction import construct_triple_jump, predicted_pseudo_symmetry_order
from coefficients.order_conditions import (
    classify_symmetry,
    eval_order_conditions,
    parity_violations,
    structural_tolerance,
)
from data.models import CoefficientSet, ComplexCoefficient, Symmetry, VerificationReport
from utils.errors import UnknownMethodError

logger = logging.getLogger(__name__)

BUNDLED_NAMES = ("SC2", "SC3", "SC5", "SC9", "SC11", "PR3", "PC3")


def _symmetric_conjugate(
    name: str,
    pairs: Sequence[Tuple[str, str]],
    middle: Optional[str],
    composition_order: int,
    projected_order: int,
    pseudo_symmetry_order: int,
    provenance: str,
) -> CoefficientSet:
    head = [ComplexCoefficient.from_text(re, im) for re, im in pairs]
    body = list(head)
    if middle is not None:
        body.append(ComplexCoefficient.from_text(middle, "0"))
    body.extend(c.conjugate() for c in reversed(head))
    return CoefficientSet(
        name=name,
        stages=len(body),
        composition_order=composition_order,
        projected_order=projected_order,
        pseudo_symmetry_order=pseudo_symmetry_order,
        symmetry=Symmetry.SYMMETRIC_CONJUGATE,
        coeffs=tuple(body),
        provenance=provenance,
    )


def _build_catalog() -> Dict[str, CoefficientSet]:
    sets = [
        _symmetric_conjugate(
            "SC2",
            [("0.5", "-0.288675134594812882254574")],
            None,
            composition_order=3,
            projected_order=4,
            pseudo_symmetry_order=7,
            provenance="two-stage symmetric-conjugate composition, alpha = 1/2 + i sqrt(3)/6",
        ),
        _symmetric_conjugate(
            "SC3",
            [("0.25", "0.322748612183951407098272")],
            "0.5",
            composition_order=4,
            projected_order=4,
            pseudo_symmetry_order=11,
            provenance="three-stage symmetric-conjugate composition, alpha1 = 1/4 + i sqrt(5/3)/4",
        ),
        _symmetric_conjugate(
            "SC5",
            [
                ("0.1752684090720741140583563", "0.05761474413053870201304364"),
                ("0.1848736801929841604288898", "-0.1941219227572495885067758"),
            ],
            "0.2797158214698834510255077",
            composition_order=5,
            projected_order=6,
            pseudo_symmetry_order=11,
            provenance="five-stage order-5 composition, smallest 1-norm root; order 6 after projection",
        ),
        _symmetric_conjugate(
            "SC9",
            [
                ("0.08848457824129988495666830", "-0.07427185309152124718276000"),
                ("0.15956870501880174198291033", "0.02322565281009720913454462"),
                ("0.09359461460849451904251162", "0.13796356924496549819619086"),
                ("0.15769224955121857774144315", "-0.07166960107892295549940996"),
            ],
            "0.00131970516037055255293318",
            composition_order=5,
            projected_order=8,
            pseudo_symmetry_order=11,
            provenance="nine-stage composition, order 8 after projection with the degree-6 imaginary conditions dropped",
        ),
        _symmetric_conjugate(
            "SC11",
            [
                ("0.07683292597738736205503", "-0.05965805084613860757735"),
                ("0.12844482070368650612973", "0.02479812697572531668668"),
                ("0.06855723904168450389158", "0.11276129325339482617990"),
                ("0.11879414810128891257046", "-0.04055765731534572031090"),
                ("0.10279469076169306832515", "0.06735917341353737963638"),
            ],
            "0.009152350828519294056116",
            composition_order=7,
            projected_order=8,
            pseudo_symmetry_order=predicted_pseudo_symmetry_order(7, Symmetry.SYMMETRIC_CONJUGATE),
            provenance="eleven-stage order-7 composition; order 8 after projection",
        ),
        construct_triple_jump(0),
        construct_triple_jump(1),
    ]
    return {s.name: s for s in sets}


_CATALOG = _build_catalog()


def available_methods() -> List[str]:
    """Names of the bundled sets in listing order."""
    return list(BUNDLED_NAMES)


def bundled_sets() -> List[CoefficientSet]:
    return [_CATALOG[name] for name in BUNDLED_NAMES]


def basic_leapfrog() -> CoefficientSet:
    """The single-stage set alpha = 1, i.e. the base scheme itself."""
    return CoefficientSet(
        name="S2",
        stages=1,
        composition_order=2,
        projected_order=2,
        pseudo_symmetry_order=None,
        symmetry=Symmetry.PALINDROMIC,
        coeffs=(ComplexCoefficient.from_text("1", "0"),),
        provenance="drift-kick-drift leapfrog",
    )


def catalog_lookup(name: str) -> CoefficientSet:
    """Return a bundled set by name.

    ``S2`` resolves to the basic leapfrog even though it is not listed.

    Raises:
        UnknownMethodError: If the name is not bundled.
    """
    if name in _CATALOG:
        return _CATALOG[name]
    if name == "S2":
        return basic_leapfrog()
    raise UnknownMethodError(name, list(BUNDLED_NAMES) + ["S2"])


def verify_coefficient_set(
    coefficient_set: CoefficientSet,
    residue_tol: float = CATALOG_RESIDUE_TOL,
) -> VerificationReport:
    """Check a set against its declared order, symmetry tag and parity structure."""
    tol = structural_tolerance(coefficient_set.stages)
    residues = eval_order_conditions(coefficient_set.coeffs)
    classified = classify_symmetry(coefficient_set.coeffs, tol)
    report = VerificationReport(
        method=coefficient_set.name,
        residues=residues,
        defects=residues.applicable_defects(coefficient_set.composition_order),
        classified=classified,
        declared=coefficient_set.symmetry,
        parity=parity_violations(coefficient_set.coeffs, coefficient_set.symmetry),
        residue_tol=residue_tol,
        structural_tol=tol,
    )
    if report.passed:
        logger.debug(f"{coefficient_set.name}: verified, max residual {report.max_residual:.3e}")
    else:
        logger.warning(f"{coefficient_set.name}: verification failed: {'; '.join(report.failures())}")
    return report
