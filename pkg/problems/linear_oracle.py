import logging
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from data.models import State
from engine.split_system import SplitSystem
from utils.errors import DomainError

logger = logging.getLogger(__name__)

ORACLE_MODES = ("random", "commuting")


class LinearSplitOracle(SplitSystem):
    """
    x' = (A + B) x split into x' = A x and x' = B x.

    A and B are seeded random real matrices scaled to spectral norm ``norm``
    (1 by default). Raising the norm is the same as stretching every step by
    that factor. The
    state vector lives in ``q``; ``p`` is empty. Both sub-flows act on q, so the
    complementary-variable property of Hamiltonian splittings does not apply.
    ``mode="commuting"`` draws diagonal matrices, for which every splitting is
    exact.
    """

    name = "oracle"

    def __init__(self, seed: int, dim: int = 4, mode: str = "random", norm: float = 1.0):
        if not 2 <= dim <= 6:
            raise DomainError(f"oracle dimension must be in 2..6, got {dim}")
        if mode not in ORACLE_MODES:
            raise DomainError(f"unknown oracle mode '{mode}'")
        if not norm > 0:
            raise DomainError(f"oracle norm must be positive, got {norm}")
        super().__init__(dim=dim)
        self.seed = seed
        self.mode = mode
        self.norm = float(norm)

        rng = np.random.default_rng(seed)
        if mode == "commuting":
            a = np.diag(rng.standard_normal(dim))
            b = np.diag(rng.standard_normal(dim))
        else:
            a = rng.standard_normal((dim, dim))
            b = rng.standard_normal((dim, dim))
        self.a = self.norm * a / np.linalg.norm(a, 2)
        self.b = self.norm * b / np.linalg.norm(b, 2)
        self._exp_a = lru_cache(maxsize=512)(self._exponential(self.a))
        self._exp_b = lru_cache(maxsize=512)(self._exponential(self.b))
        logger.debug(f"oracle seed {seed}, dim {dim}, mode {mode}, norm {norm}")

    @staticmethod
    def _exponential(matrix: np.ndarray):
        def exponential(tau: complex) -> np.ndarray:
            return expm(complex(tau) * matrix)
        return exponential

    def drift(self, state: State, tau: complex) -> State:
        return State(self._exp_a(complex(tau)) @ state.q, state.p)

    def kick(self, state: State, tau: complex) -> State:
        return State(self._exp_b(complex(tau)) @ state.q, state.p)

    def energy(self, state: State) -> float:
        # not conserved; kept so trajectories carry a well-defined column
        x = np.real(state.q)
        return float(0.5 * np.dot(x, x))

    def flow_matrix(self, t: float) -> np.ndarray:
        return expm(t * (self.a + self.b))

    def exact_flow(self, state: State, t: float) -> State:
        return State(self.flow_matrix(t) @ state.q, state.p)

    def initial_state(self) -> State:
        x = np.random.default_rng(self.seed + 1).standard_normal(self.dim)
        return State.from_real(x / np.linalg.norm(x), [])


def linear_split_oracle(seed: int, dim: int = 4, mode: str = "random", norm: float = 1.0) -> LinearSplitOracle:
    return LinearSplitOracle(seed, dim, mode, norm)
