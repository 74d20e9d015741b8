import logging
from dataclasses import replace
from typing import List

import numpy as np

from config.settings import ACCEPT_RESIDUAL_TOL, DEDUP_DISTANCE
from coefficients.catalog import bundled_sets
from coefficients.construction import predicted_pseudo_symmetry_order, projected_order_for
from coefficients.error_model import scaled_error_coefficient
from data.models import CoefficientSet, ComplexCoefficient, RankedSolution, SearchProblem, Symmetry
from solver.newton import (
    conjugate_params,
    newton_solve,
    params_to_alphas,
    residual_vector,
    set_to_params,
)

logger = logging.getLogger(__name__)


class MultistartSearch:
    """
    Seeded multistart Newton search for symmetric-conjugate compositions.

    Every start draws the (real, imaginary) parts of each conjugate pair
    uniformly from [-box, box] and the real middle stage from [0, box]. Roots
    are oriented canonically, deduplicated, filtered to positive real parts and
    ranked by 1-norm, then by the leading error coefficient.
    """

    # Match radius against bundled entries when choosing the conjugate orientation
    CATALOG_MATCH_DISTANCE = 1e-6

    def __init__(self, problem: SearchProblem):
        self.problem = problem
        self.rng = np.random.default_rng(problem.seed)
        self._catalog_params = [
            set_to_params(s)
            for s in bundled_sets()
            if s.stages == problem.stages and s.symmetry is Symmetry.SYMMETRIC_CONJUGATE
        ]

    def draw_start(self) -> np.ndarray:
        s = self.problem.stages
        box = self.problem.box
        pairs = self.rng.uniform(-box, box, size=2 * (s // 2))
        if s % 2:
            return np.concatenate([pairs, self.rng.uniform(0.0, box, size=1)])
        return pairs

    def canonical(self, params: np.ndarray) -> np.ndarray:
        """Pick one representative of a root and its conjugate."""
        flipped = conjugate_params(params)
        for reference in self._catalog_params:
            if np.max(np.abs(params - reference)) < self.CATALOG_MATCH_DISTANCE:
                return params
            if np.max(np.abs(flipped - reference)) < self.CATALOG_MATCH_DISTANCE:
                return flipped
        for value in params[1 : 2 * (params.shape[0] // 2) : 2]:
            if abs(value) > DEDUP_DISTANCE:
                return params if value > 0 else flipped
        return params

    def collect_roots(self) -> List[np.ndarray]:
        roots: List[np.ndarray] = []
        failed = 0
        for start in range(self.problem.max_starts):
            result = newton_solve(self.draw_start(), self.problem.target_order)
            if not result.converged or result.residual > ACCEPT_RESIDUAL_TOL:
                failed += 1
                continue
            root = self.canonical(result.params)
            if any(np.max(np.abs(root - known)) < DEDUP_DISTANCE for known in roots):
                continue
            logger.debug(f"start {start}: new root after {result.iterations} iterations")
            roots.append(root)
        logger.info(f"{self.problem.max_starts - failed} of {self.problem.max_starts} starts converged, {len(roots)} distinct roots")
        return roots

    def to_solution(self, params: np.ndarray, index: int) -> RankedSolution:
        order = self.problem.target_order
        alphas = params_to_alphas(params)
        projected = projected_order_for(order, Symmetry.SYMMETRIC_CONJUGATE)
        coefficient_set = CoefficientSet(
            name=self.solution_name(index),
            stages=self.problem.stages,
            composition_order=order,
            projected_order=projected,
            pseudo_symmetry_order=predicted_pseudo_symmetry_order(order, Symmetry.SYMMETRIC_CONJUGATE),
            symmetry=Symmetry.SYMMETRIC_CONJUGATE,
            coeffs=tuple(ComplexCoefficient.from_complex(a) for a in alphas),
            provenance=f"multistart search, seed {self.problem.seed}, {self.problem.max_starts} starts",
        )
        return RankedSolution(
            set=coefficient_set,
            one_norm=float(sum(abs(a) for a in alphas)),
            leading_error=scaled_error_coefficient(alphas, projected + 1),
            residual=float(np.max(np.abs(residual_vector(params, order)))),
        )

    def run(self) -> List[RankedSolution]:
        roots = [r for r in self.collect_roots() if all(a.real > 0 for a in params_to_alphas(r))]
        solutions = [self.to_solution(r, 0) for r in roots]
        solutions.sort(key=lambda sol: (sol.one_norm, sol.leading_error))
        # names follow the final rank
        ranked = [
            replace(sol, set=replace(sol.set, name=self.solution_name(rank)))
            for rank, sol in enumerate(solutions, start=1)
        ]
        if not ranked:
            logger.warning(f"No positive-real-part root found for {self.problem.stages} stages, order {self.problem.target_order}")
        return ranked

    def solution_name(self, rank: int) -> str:
        return f"SC{self.problem.stages}_o{self.problem.target_order}_{rank}"


def multistart_search(problem: SearchProblem) -> List[RankedSolution]:
    """Run a seeded multistart search; identical problems give identical rankings."""
    logger.info(f"Searching {problem.stages}-stage order-{problem.target_order} roots, seed {problem.seed}, {problem.max_starts} starts")
    return MultistartSearch(problem).run()
