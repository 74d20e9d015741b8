"""Benchmark Hamiltonians with analytically continued kicks."""

import logging
import math
from typing import Optional

import numpy as np

from data.models import State
from engine.split_system import SeparableHamiltonian
from utils.errors import DomainError

logger = logging.getLogger(__name__)

# |Im(q.q)| below which a non-positive real part counts as on the branch cut
BRANCH_CUT_TOL = 1e-12


class HarmonicOscillator(SeparableHamiltonian):
    """H = (p^2 + q^2) / 2, the linear test problem."""

    name = "ho"

    def __init__(self, q0: float = 2.5, p0: float = 0.0):
        super().__init__(dim=1)
        self.q0 = q0
        self.p0 = p0

    def force(self, q: np.ndarray) -> np.ndarray:
        return -q

    def potential(self, q: np.ndarray) -> float:
        return float(0.5 * np.dot(q, q))

    def initial_state(self) -> State:
        return State.from_real([self.q0], [self.p0])

    def exact_flow(self, state: State, t: float) -> State:
        c, s = math.cos(t), math.sin(t)
        return State(c * state.q + s * state.p, -s * state.q + c * state.p)


class Kepler(SeparableHamiltonian):
    """
    Planar two-body problem with mu = 1, H = p.p/2 - (q.q)^(-1/2).

    The complexified kick uses the principal branch of (q.q)^(-3/2). It is not
    defined on the branch cut where q.q is real and non-positive.
    """

    name = "kepler"

    def __init__(self, e: float = 0.6):
        if not 0.0 <= e < 1.0:
            raise DomainError(f"eccentricity must lie in [0, 1), got {e}")
        super().__init__(dim=2)
        self.e = e

    def force(self, q: np.ndarray) -> np.ndarray:
        r2 = complex(q[0] * q[0] + q[1] * q[1])
        return -q * r2 ** -1.5

    def potential(self, q: np.ndarray) -> float:
        return -1.0 / math.sqrt(float(np.dot(q, q)))

    def domain_guard(self, state: State) -> Optional[str]:
        q = state.q
        r2 = complex(q[0] * q[0] + q[1] * q[1])
        if r2.real <= 0.0 and abs(r2.imag) < BRANCH_CUT_TOL:
            return f"q.q = {r2} lies on the branch cut of (q.q)^(-3/2)"
        return None

    def initial_state(self) -> State:
        """Pericentre start of the orbit with eccentricity e; H0 = -1/2."""
        e = self.e
        return State.from_real([1.0 - e, 0.0], [0.0, math.sqrt((1.0 + e) / (1.0 - e))])

    @property
    def period(self) -> float:
        # semi-major axis 1 for every e
        return 2.0 * math.pi


class Pendulum(SeparableHamiltonian):
    """H = p^2/2 + (1 - cos q); the kick is entire so no guard is needed."""

    name = "pendulum"

    def __init__(self, alpha: float = 0.5):
        super().__init__(dim=1)
        self.alpha = alpha

    def force(self, q: np.ndarray) -> np.ndarray:
        return -np.sin(q)

    def potential(self, q: np.ndarray) -> float:
        return float(1.0 - math.cos(float(q[0])))

    def initial_state(self) -> State:
        """q0 = 0, p0 = alpha; alpha > 2 gives full turns."""
        return State.from_real([0.0], [self.alpha])


def harmonic_oscillator(q0: float = 2.5, p0: float = 0.0) -> HarmonicOscillator:
    return HarmonicOscillator(q0, p0)


def kepler(e: float = 0.6) -> Kepler:
    return Kepler(e)


def pendulum(alpha: float = 0.5) -> Pendulum:
    return Pendulum(alpha)
