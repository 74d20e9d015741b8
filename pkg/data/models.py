import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from utils.errors import DomainError, IntegrationError


class Symmetry(str, Enum):
    NONE = "none"
    PALINDROMIC = "palindromic"
    SYMMETRIC_CONJUGATE = "symmetric_conjugate"
    BOTH = "both"

    def agrees_with(self, declared: "Symmetry") -> bool:
        """True when a classified pattern is compatible with a declared tag."""
        if self is declared:
            return True
        return self is Symmetry.BOTH and declared in (Symmetry.PALINDROMIC, Symmetry.SYMMETRIC_CONJUGATE)


class Projection(str, Enum):
    PER_STEP = "per_step"
    FINAL_ONLY = "final_only"
    NONE = "none"


class BaseKind(str, Enum):
    LEAPFROG_DKD = "leapfrog_dkd"


@dataclass(frozen=True)
class ComplexCoefficient:
    re: float
    im: float
    # Printed decimal text, kept so files can reproduce the source digits.
    re_text: Optional[str] = field(default=None, compare=False, repr=False)
    im_text: Optional[str] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"non-finite coefficient {self.re} + {self.im}i")

    @classmethod
    def from_text(cls, re_text: str, im_text: str = "0") -> "ComplexCoefficient":
        return cls(float(re_text), float(im_text), re_text=re_text, im_text=im_text)

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexCoefficient":
        value = complex(value)
        return cls(value.real, value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def conjugate(self) -> "ComplexCoefficient":
        im_text = None
        if self.im_text is not None:
            im_text = self.im_text[1:] if self.im_text.startswith("-") else "-" + self.im_text
        return ComplexCoefficient(self.re, -self.im, re_text=self.re_text, im_text=im_text)


@dataclass(frozen=True)
class CoefficientSet:
    name: str
    stages: int
    composition_order: int
    projected_order: int
    pseudo_symmetry_order: Optional[int]   # None: exactly time-symmetric
    symmetry: Symmetry
    coeffs: Tuple[ComplexCoefficient, ...]
    provenance: str = ""

    def __post_init__(self):
        if self.stages < 1:
            raise DomainError(f"{self.name}: stages must be positive, got {self.stages}")
        if len(self.coeffs) != self.stages:
            raise DomainError(f"{self.name}: declared {self.stages} stages but holds {len(self.coeffs)} coefficients")

    @property
    def alphas(self) -> Tuple[complex, ...]:
        """Step fractions in application order."""
        return tuple(c.value for c in self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.array(self.alphas, dtype=complex)


@dataclass(frozen=True)
class OrderConditionResidues:
    w1: complex
    w31: complex
    w41: complex
    w51: complex
    w52: complex

    def conjugate(self) -> "OrderConditionResidues":
        return OrderConditionResidues(*(complex(w).conjugate() for w in self.as_tuple()))

    def as_tuple(self) -> Tuple[complex, ...]:
        return (self.w1, self.w31, self.w41, self.w51, self.w52)

    def applicable_defects(self, composition_order: int) -> Dict[str, float]:
        """Magnitudes of the conditions a composition of the given order must satisfy."""
        defects = {"w1": abs(self.w1 - 1)}
        if composition_order >= 3:
            defects["w31"] = abs(self.w31)
        if composition_order >= 4:
            defects["w41"] = abs(self.w41)
        if composition_order >= 5:
            defects["w51"] = abs(self.w51)
            defects["w52"] = abs(self.w52)
        return defects


@dataclass(frozen=True)
class ErrorModel:
    projected_order: int
    e_lo: float
    e_hi: float
    elbow: float
    scaled: bool = True


@dataclass(frozen=True)
class SearchProblem:
    stages: int
    target_order: int
    seed: int
    box: float = 1.0
    max_starts: int = 200

    def __post_init__(self):
        if self.stages < 1:
            raise DomainError(f"stages must be positive, got {self.stages}")
        if not 1 <= self.target_order <= 5:
            raise DomainError(f"target order {self.target_order} has no closed-form conditions (1..5 supported)")
        if self.box <= 0:
            raise DomainError(f"search box must be positive, got {self.box}")

    @property
    def free_parameters(self) -> int:
        # each conjugate pair carries two reals, a middle stage one
        return self.stages


@dataclass(frozen=True)
class RankedSolution:
    set: CoefficientSet
    one_norm: float
    leading_error: float
    residual: float


@dataclass(frozen=True, eq=False)
class State:
    q: np.ndarray
    p: np.ndarray

    @classmethod
    def from_real(cls, q, p) -> "State":
        return cls(np.asarray(q, dtype=complex).reshape(-1), np.asarray(p, dtype=complex).reshape(-1))

    @property
    def dim(self) -> int:
        return self.q.shape[0]

    def projected(self) -> "State":
        """Discard imaginary parts."""
        return State(self.q.real.astype(complex), self.p.real.astype(complex))

    def conjugate(self) -> "State":
        return State(self.q.conj(), self.p.conj())

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.q, self.p])

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.p)))


@dataclass(frozen=True)
class MethodSpec:
    set: CoefficientSet
    base: BaseKind = BaseKind.LEAPFROG_DKD
    projection: Projection = Projection.PER_STEP

    @property
    def name(self) -> str:
        return self.set.name

    @property
    def stages(self) -> int:
        return self.set.stages


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    step: int
    t: float
    q: np.ndarray
    p: np.ndarray
    rel_energy_error: float


@dataclass
class Trajectory:
    records: List[TrajectoryRecord]
    final_state: State
    error: Optional[IntegrationError] = None

    @property
    def completed(self) -> bool:
        return self.error is None

    def energy_errors(self) -> np.ndarray:
        return np.array([r.rel_energy_error for r in self.records])

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])


@dataclass
class ProbeReport:
    probe: str
    method: str
    grid: List[float]
    defects: List[float]
    slope: Optional[float] = None
    first_degree: Optional[int] = None
    trigger_magnitude: Optional[float] = None
    fit_residual: Optional[float] = None
    discarded: int = 0
    saturated: bool = False
    insufficient_signal: bool = False
    parameters: Dict[str, object] = field(default_factory=dict)

    def summary(self) -> str:
        if self.first_degree is not None:
            return f"first degree {self.first_degree} (|c| = {self.trigger_magnitude:.3e})"
        if self.saturated:
            return f">= {self.parameters.get('max_degree')}"
        if self.insufficient_signal:
            return "insufficient signal"
        return f"slope {self.slope:.3f}"


@dataclass(frozen=True)
class StabilityReport:
    method: str
    stages: int
    h_t: float
    h_t_per_stage: float
    scan_step: float
    bisection_tol: float
    unbounded: bool = False


@dataclass(frozen=True)
class DriftStatistics:
    method: str
    h: float
    t_final: float
    first_decile_max: float
    last_decile_max: float
    trend: float
    envelope_noise: float
    samples: int

    def bounded(self, factor: float = 2.0) -> bool:
        """Last-decile maximum within ``factor`` of the first-decile maximum."""
        return self.last_decile_max <= factor * self.first_decile_max


@dataclass(frozen=True)
class WorkPrecisionRow:
    method: str
    h: float
    steps: int
    cost: int
    metric: str
    value: float


@dataclass
class RunConfig:
    subcommand: str
    methods: List[str] = field(default_factory=list)
    problem: Optional[str] = None
    problem_params: Dict[str, float] = field(default_factory=dict)
    h: Optional[float] = None
    h_grid: Optional[Tuple[float, float, int]] = None
    t_final: Optional[float] = None
    sample_every: int = 1
    seed: Optional[int] = None
    output: Optional[str] = None
    options: Dict[str, object] = field(default_factory=dict)

    def header_items(self) -> List[Tuple[str, object]]:
        """Ordered key/value pairs describing the run, for the CSV header line."""
        items: List[Tuple[str, object]] = [("command", self.subcommand)]
        if self.methods:
            items.append(("methods", "|".join(self.methods)))
        if self.problem:
            items.append(("problem", self.problem))
        items.extend(sorted(self.problem_params.items()))
        for key in ("h", "h_grid", "t_final", "seed"):
            value = getattr(self, key)
            if value is not None:
                items.append((key, value))
        if self.subcommand == "bench":
            items.append(("sample_every", self.sample_every))
        items.extend(sorted(self.options.items()))
        return items


@dataclass
class VerificationReport:
    method: str
    residues: OrderConditionResidues
    defects: Dict[str, float]
    classified: Symmetry
    declared: Symmetry
    parity: Dict[str, float]
    residue_tol: float
    structural_tol: float

    @property
    def max_residual(self) -> float:
        return max(self.defects.values())

    @property
    def symmetry_ok(self) -> bool:
        return self.classified.agrees_with(self.declared)

    @property
    def parity_ok(self) -> bool:
        return all(v <= self.structural_tol for v in self.parity.values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.residue_tol and self.symmetry_ok and self.parity_ok

    def failures(self) -> List[str]:
        """Human-readable list of the checks that did not pass."""
        failed = [f"{k} = {v:.3e}" for k, v in self.defects.items() if v > self.residue_tol]
        if not self.symmetry_ok:
            failed.append(f"classified {self.classified.value}, declared {self.declared.value}")
        failed.extend(f"{k} = {v:.3e}" for k, v in self.parity.items() if v > self.structural_tol)
        return failed
