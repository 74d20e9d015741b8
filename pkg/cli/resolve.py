import logging
import math
import os
import re
from typing import Dict, List

from coefficients.catalog import catalog_lookup, available_methods
from coefficients.construction import conjugate_set
from data.coefficient_file import read_coefficient_file
from data.models import CoefficientSet, MethodSpec, Projection
from engine.split_system import SplitSystem
from problems.hamiltonians import HarmonicOscillator, Kepler, Pendulum
from problems.linear_oracle import LinearSplitOracle
from utils.errors import DomainError, UnknownMethodError

logger = logging.getLogger(__name__)

PROBLEMS = ("ho", "kepler", "pendulum", "oracle")

_TIME = re.compile(r"^\s*([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\s*\*?\s*(pi)?\s*$")


def resolve_set(name: str) -> CoefficientSet:
    """Catalog name first (a trailing ``*`` selects the conjugate), then a file path."""
    base = name[:-1] if name.endswith("*") else name
    try:
        found = catalog_lookup(base)
        return conjugate_set(found) if name.endswith("*") else found
    except UnknownMethodError:
        if os.path.isfile(name):
            return read_coefficient_file(name)
        raise UnknownMethodError(name, available_methods() + ["S2"])


def resolve_method(name: str, projection: str = Projection.PER_STEP.value) -> MethodSpec:
    try:
        policy = Projection(projection)
    except ValueError:
        raise DomainError(f"unknown projection '{projection}'")
    return MethodSpec(resolve_set(name), projection=policy)


def resolve_methods(names: str, projection: str = Projection.PER_STEP.value) -> List[MethodSpec]:
    return [resolve_method(n.strip(), projection) for n in names.split(",") if n.strip()]


def parse_time(text: str) -> float:
    """Parse a time such as ``650``, ``200pi`` or ``2*pi``."""
    match = _TIME.match(str(text))
    if not match or (not match.group(1) and not match.group(2)):
        raise DomainError(f"cannot parse time '{text}'")
    try:
        number = float(match.group(1)) if match.group(1) else 1.0
    except ValueError:
        raise DomainError(f"cannot parse time '{text}'")
    return number * math.pi if match.group(2) else number


def build_system(problem: str, params: Dict[str, float]) -> SplitSystem:
    """Instantiate a benchmark problem from its CLI name and parameters."""
    if problem == "ho":
        return HarmonicOscillator(q0=params.get("q0", 2.5), p0=params.get("p0", 0.0))
    if problem == "kepler":
        return Kepler(e=params.get("e", 0.6))
    if problem == "pendulum":
        return Pendulum(alpha=params.get("alpha", 0.5))
    if problem == "oracle":
        return LinearSplitOracle(
            seed=int(params.get("seed", 0)),
            dim=int(params.get("dim", 4)),
            norm=float(params.get("norm", 1.0)),
        )
    raise DomainError(f"unknown problem '{problem}'; expected one of {', '.join(PROBLEMS)}")


def snap_step(h: float, t_final: float) -> float:
    """Nearest step size that divides t_final into a whole number of steps."""
    if h <= 0:
        raise DomainError(f"step size must be positive, got {h}")
    n = max(1, int(round(t_final / h)))
    return t_final / n
