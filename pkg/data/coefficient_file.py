"""Plain-text coefficient files.

Layout, one record per line. ``#`` starts a comment on every line except
provenance, whose text after the key and one space is kept verbatim::

    name SC5
    stages 5
    composition_order 5
    projected_order 6
    symmetry symmetric-conjugate
    pseudo_symmetry_order 11        (optional, "none" for exactly symmetric)
    provenance free text            (optional)
    stage <re> <im>                 (s lines, application order)
"""

import logging
import math
import os
import re
from decimal import Decimal
from typing import Dict, List, Optional

from config.settings import CONSISTENCY_TOL, FILE_DECIMAL_DIGITS
from coefficients.construction import predicted_pseudo_symmetry_order
from coefficients.order_conditions import classify_symmetry, structural_tolerance
from data.models import CoefficientSet, ComplexCoefficient, Symmetry
from utils.errors import CoefficientFileError, DomainError, ValidationError

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("name", "stages", "composition_order", "projected_order", "symmetry")
OPTIONAL_KEYS = ("pseudo_symmetry_order", "provenance")

_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _symmetry_token(symmetry: Symmetry) -> str:
    if symmetry is Symmetry.BOTH:
        symmetry = Symmetry.PALINDROMIC
    return symmetry.value.replace("_", "-")


def _parse_symmetry(token: str, line_number: int) -> Symmetry:
    try:
        symmetry = Symmetry(token.replace("-", "_").lower())
    except ValueError:
        raise CoefficientFileError(f"unknown symmetry '{token}'", line_number)
    if symmetry is Symmetry.BOTH:
        raise CoefficientFileError("symmetry must be none, palindromic or symmetric-conjugate", line_number)
    return symmetry


def _parse_int(value: str, key: str, line_number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise CoefficientFileError(f"{key} must be an integer, got '{value}'", line_number)


def significant_digits(text: str) -> int:
    """Count significant digits in a decimal literal."""
    mantissa = re.split(r"[eE]", text.strip().lstrip("+-"))[0]
    digits = mantissa.replace(".", "").lstrip("0")
    if "." in mantissa:
        return len(digits)
    return len(digits.rstrip("0")) or 1


def format_decimal(value: float, text: Optional[str] = None) -> str:
    """Decimal text for a component: the source digits when they are precise enough.

    Source text is kept when it carries at least FILE_DECIMAL_DIGITS significant
    digits or denotes the double exactly (e.g. "0.5"); otherwise the value is
    printed with FILE_DECIMAL_DIGITS significant digits.
    """
    if text is not None and float(text) == value:
        if significant_digits(text) >= FILE_DECIMAL_DIGITS or Decimal(text) == Decimal(value):
            return text
    return format(value, f".{FILE_DECIMAL_DIGITS - 1}e")


def read_coefficient_file(path: str) -> CoefficientSet:
    """Parse and validate a coefficient file.

    Args:
        path: Location of the file.

    Returns:
        The CoefficientSet, keeping the decimal text of every component.

    Raises:
        CoefficientFileError: On a malformed line; the message names the line.
        ValidationError: If the coefficients are inconsistent (sum not 1) or do
            not satisfy the declared symmetry.
    """
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.readlines()

    header: Dict[str, str] = {}
    header_lines: Dict[str, int] = {}
    coeffs: List[ComplexCoefficient] = []
    for line_number, raw in enumerate(lines, start=1):
        text = raw.rstrip("\r\n")
        key, _, rest = text.lstrip().partition(" ")
        if key == "provenance":
            line = text
        else:
            line = text.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(" ")
            rest = rest.strip()

        if key == "stage":
            parts = rest.split()
            if len(parts) != 2 or not all(_DECIMAL.match(p) for p in parts):
                raise CoefficientFileError(f"expected 'stage <re> <im>', got '{line}'", line_number)
            try:
                coeffs.append(ComplexCoefficient.from_text(parts[0], parts[1]))
            except DomainError as e:
                raise CoefficientFileError(str(e), line_number)
            continue

        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise CoefficientFileError(f"unknown key '{key}'", line_number)
        if coeffs:
            raise CoefficientFileError(f"'{key}' must precede the stage lines", line_number)
        if key in header:
            raise CoefficientFileError(f"duplicate key '{key}'", line_number)
        if not rest and key != "provenance":
            raise CoefficientFileError(f"missing value for '{key}'", line_number)
        header[key] = rest
        header_lines[key] = line_number

    last_line = len(lines)
    missing = [k for k in REQUIRED_KEYS if k not in header]
    if missing:
        raise CoefficientFileError(f"missing required keys: {', '.join(missing)}", last_line)

    stages = _parse_int(header["stages"], "stages", header_lines["stages"])
    if stages < 1:
        raise CoefficientFileError(f"stages must be positive, got {stages}", header_lines["stages"])
    if len(coeffs) != stages:
        raise CoefficientFileError(f"declared {stages} stages but found {len(coeffs)} stage lines", last_line)
    composition_order = _parse_int(header["composition_order"], "composition_order", header_lines["composition_order"])
    projected_order = _parse_int(header["projected_order"], "projected_order", header_lines["projected_order"])
    symmetry = _parse_symmetry(header["symmetry"], header_lines["symmetry"])

    real = all(c.im == 0 for c in coeffs)
    if "pseudo_symmetry_order" in header:
        token = header["pseudo_symmetry_order"]
        pseudo = None if token.lower() == "none" else _parse_int(token, "pseudo_symmetry_order", header_lines["pseudo_symmetry_order"])
    else:
        pseudo = predicted_pseudo_symmetry_order(composition_order, symmetry, real=real)

    coefficient_set = CoefficientSet(
        name=header["name"],
        stages=stages,
        composition_order=composition_order,
        projected_order=projected_order,
        pseudo_symmetry_order=pseudo,
        symmetry=symmetry,
        coeffs=tuple(coeffs),
        provenance=header.get("provenance", ""),
    )
    validate_coefficient_set(coefficient_set)
    logger.info(f"Loaded coefficient set {coefficient_set.name} ({stages} stages) from {path}")
    return coefficient_set


def validate_coefficient_set(coefficient_set: CoefficientSet) -> None:
    """Raise ValidationError unless the set is consistent and matches its symmetry tag."""
    total = sum(coefficient_set.alphas, 0j)
    if abs(total.real - 1.0) > CONSISTENCY_TOL or abs(total.imag) > CONSISTENCY_TOL:
        raise ValidationError(f"{coefficient_set.name}: coefficients sum to {total}, expected 1")

    if coefficient_set.symmetry is Symmetry.NONE:
        return
    classified = classify_symmetry(coefficient_set.coeffs, structural_tolerance(coefficient_set.stages))
    if not classified.agrees_with(coefficient_set.symmetry):
        raise ValidationError(
            f"{coefficient_set.name}: declared {coefficient_set.symmetry.value} "
            f"but coefficients are {classified.value}"
        )


def write_coefficient_file(coefficient_set: CoefficientSet, path: str) -> str:
    """Write a set in the coefficient-file format; returns the path written."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)

    pseudo = coefficient_set.pseudo_symmetry_order
    lines = [
        f"# coefficient set {coefficient_set.name}",
        f"name {coefficient_set.name}",
        f"stages {coefficient_set.stages}",
        f"composition_order {coefficient_set.composition_order}",
        f"projected_order {coefficient_set.projected_order}",
        f"symmetry {_symmetry_token(coefficient_set.symmetry)}",
        f"pseudo_symmetry_order {'none' if pseudo is None else pseudo}",
    ]
    if coefficient_set.provenance:
        if "\n" in coefficient_set.provenance or "\r" in coefficient_set.provenance:
            raise DomainError(f"{coefficient_set.name}: provenance must be a single line")
        lines.append(f"provenance {coefficient_set.provenance}")
    for c in coefficient_set.coeffs:
        if not (math.isfinite(c.re) and math.isfinite(c.im)):
            raise DomainError(f"{coefficient_set.name}: non-finite coefficient")
        lines.append(f"stage {format_decimal(c.re, c.re_text)} {format_decimal(c.im, c.im_text)}")

    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    logger.info(f"Wrote coefficient set {coefficient_set.name} to {path}")
    return path
