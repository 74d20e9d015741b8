import logging
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from data.models import State
from utils.errors import IntegrationError

logger = logging.getLogger(__name__)


class SplitSystem(ABC):
    """
    A problem split into two parts whose flows are exact for complex time.

    Subclasses implement ``drift`` and ``kick`` as those two flows over a
    complex time tau and ``energy`` on real states. Instances hold no
    mutable state, so one system can serve many runs.
    """

    name = "split-system"

    def __init__(self, dim: int):
        self.dim = dim

    @abstractmethod
    def drift(self, state: State, tau: complex) -> State:
        """Exact flow of the first part over time tau."""

    @abstractmethod
    def kick(self, state: State, tau: complex) -> State:
        """Exact flow of the second part over time tau."""

    @abstractmethod
    def energy(self, state: State) -> float:
        """Energy of a real state."""

    def domain_guard(self, state: State) -> Optional[str]:
        """Reason the kick cannot be evaluated at this state, or None."""
        return None

    def check_domain(self, state: State) -> None:
        reason = self.domain_guard(state)
        if reason is not None:
            raise IntegrationError(reason, state=state)

    def initial_state(self) -> State:
        raise NotImplementedError(f"{self.name} has no default initial state")

    def exact_flow(self, state: State, t: float) -> State:
        raise NotImplementedError(f"{self.name} has no closed-form flow")

    @property
    def has_exact_flow(self) -> bool:
        return type(self).exact_flow is not SplitSystem.exact_flow

    def _real_parts(self, state: State):
        return np.real(state.q), np.real(state.p)


class SeparableHamiltonian(SplitSystem):
    """Systems with T(p) = p.p / 2, so the drift is q += tau p."""

    def drift(self, state: State, tau: complex) -> State:
        return State(state.q + tau * state.p, state.p)

    def kick(self, state: State, tau: complex) -> State:
        return State(state.q, state.p + tau * self.force(state.q))

    @abstractmethod
    def force(self, q: np.ndarray) -> np.ndarray:
        """-grad V, analytically continued to complex q."""

    @abstractmethod
    def potential(self, q: np.ndarray) -> float:
        """V at a real position."""

    def energy(self, state: State) -> float:
        q, p = self._real_parts(state)
        return float(0.5 * np.dot(p, p) + self.potential(q))
