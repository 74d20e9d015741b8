import math
from dataclasses import replace

import numpy as np
import pytest

from coefficients.catalog import catalog_lookup, verify_coefficient_set
from data.models import ComplexCoefficient, SearchProblem
from solver.multistart import MultistartSearch, multistart_search
from solver.newton import (
    conjugate_params,
    newton_solve,
    params_to_alphas,
    polish,
    residual_vector,
    set_to_params,
)
from utils.errors import ConvergenceError, DomainError

SC3_ALPHA = complex(0.25, math.sqrt(5.0 / 3.0) / 4)


def perturbed(name, delta):
    """A bundled set with every real part shifted by delta, symmetry kept."""
    s = catalog_lookup(name)
    coeffs = tuple(ComplexCoefficient(c.re + delta, c.im) for c in s.coeffs)
    return replace(s, coeffs=coeffs)


class TestParametrisation:

    def test_even_stage_count(self):
        alphas = params_to_alphas([0.5, -0.25])
        assert alphas == [complex(0.5, -0.25), complex(0.5, 0.25)]

    def test_odd_stage_count(self):
        alphas = params_to_alphas([0.25, 0.3, 0.5])
        assert alphas == [complex(0.25, 0.3), complex(0.5, 0.0), complex(0.25, -0.3)]

    def test_set_round_trip(self):
        sc5 = catalog_lookup("SC5")
        params = set_to_params(sc5)
        assert params.shape == (5,)
        assert tuple(params_to_alphas(params)) == sc5.alphas

    def test_palindromic_set_rejected(self):
        with pytest.raises(DomainError):
            set_to_params(catalog_lookup("PC3"))

    def test_conjugate_params(self):
        np.testing.assert_array_equal(conjugate_params(np.array([0.25, 0.3, 0.5])), [0.25, -0.3, 0.5])

    def test_residual_vector_lengths(self):
        params = set_to_params(catalog_lookup("SC5"))
        assert residual_vector(params, 1).shape == (1,)
        assert residual_vector(params, 3).shape == (2,)
        assert residual_vector(params, 4).shape == (3,)
        assert residual_vector(params, 5).shape == (5,)
        with pytest.raises(DomainError):
            residual_vector(params, 6)

    def test_bundled_roots(self):
        for name, order in (("SC2", 3), ("SC3", 4), ("SC5", 5), ("SC9", 5)):
            params = set_to_params(catalog_lookup(name))
            assert np.max(np.abs(residual_vector(params, order))) < 1e-13


class TestNewton:

    def test_converges_to_sc3_from_nearby(self):
        start = np.array([SC3_ALPHA.real + 1e-3, SC3_ALPHA.imag - 1e-3, 0.5 + 1e-3])
        result = newton_solve(start, 4)
        assert result.converged
        assert not result.diverged
        alphas = params_to_alphas(result.params)
        assert alphas[0] == pytest.approx(SC3_ALPHA, abs=1e-12)
        assert alphas[1] == pytest.approx(0.5, abs=1e-12)

    def test_exact_root_needs_no_iterations(self):
        result = newton_solve([1.0], 1)
        assert result.converged
        assert result.iterations == 0

    def test_polish_recovers_sc3(self):
        polished = polish(perturbed("SC3", 1e-6))
        assert polished.alphas[0] == pytest.approx(SC3_ALPHA, abs=1e-12)
        assert verify_coefficient_set(polished).passed

    def test_polish_keeps_an_exact_set(self):
        sc5 = catalog_lookup("SC5")
        polished = polish(sc5)
        np.testing.assert_allclose(polished.as_array(), sc5.as_array(), atol=1e-14)

    def test_polish_outside_basin(self):
        with pytest.raises(ConvergenceError, match="basin"):
            polish(perturbed("SC5", 0.05))

    def test_polish_rejects_palindromic(self):
        with pytest.raises(DomainError):
            polish(catalog_lookup("PC3"))


class TestMultistartSearch:

    def test_trivial_problem(self):
        solutions = multistart_search(SearchProblem(stages=1, target_order=1, seed=1, max_starts=5))
        assert len(solutions) == 1
        assert solutions[0].set.alphas[0] == pytest.approx(1.0, abs=1e-14)
        assert solutions[0].set.name == "SC1_o1_1"

    def test_recovers_sc2_in_catalog_orientation(self):
        solutions = multistart_search(SearchProblem(stages=2, target_order=3, seed=3, max_starts=20))
        assert len(solutions) == 1
        found = solutions[0].set
        np.testing.assert_allclose(found.as_array(), catalog_lookup("SC2").as_array(), atol=1e-12)
        assert found.projected_order == 4
        assert found.pseudo_symmetry_order == 7

    def test_recovers_sc3(self):
        solutions = multistart_search(SearchProblem(stages=3, target_order=4, seed=11, max_starts=200))
        target = catalog_lookup("SC3").as_array()
        assert any(np.max(np.abs(s.set.as_array() - target)) < 1e-12 for s in solutions)
        for s in solutions:
            assert all(a.real > 0 for a in s.set.alphas)
            assert verify_coefficient_set(s.set).passed

    def test_ranking_and_names(self):
        solutions = multistart_search(SearchProblem(stages=3, target_order=4, seed=11, max_starts=200))
        keys = [(s.one_norm, s.leading_error) for s in solutions]
        assert keys == sorted(keys)
        assert [s.set.name for s in solutions] == [f"SC3_o4_{k}" for k in range(1, len(solutions) + 1)]

    def test_deterministic(self):
        problem = SearchProblem(stages=3, target_order=4, seed=5, max_starts=50)
        first = multistart_search(problem)
        second = multistart_search(problem)
        assert [s.set.name for s in first] == [s.set.name for s in second]
        for a, b in zip(first, second):
            assert a.set.alphas == b.set.alphas

    def test_canonical_orientation_without_catalog_match(self):
        search = MultistartSearch(SearchProblem(stages=4, target_order=3, seed=0))
        params = np.array([0.2, -0.1, 0.3, 0.4])
        np.testing.assert_array_equal(search.canonical(params), [0.2, 0.1, 0.3, -0.4])

    def test_invalid_problem(self):
        with pytest.raises(DomainError):
            SearchProblem(stages=5, target_order=6, seed=0)
        with pytest.raises(DomainError):
            SearchProblem(stages=5, target_order=5, seed=0, box=0.0)

    @pytest.mark.slow
    def test_recovers_sc5(self):
        solutions = multistart_search(SearchProblem(stages=5, target_order=5, seed=20220817, max_starts=2000))
        target = catalog_lookup("SC5").as_array()
        assert any(np.max(np.abs(s.set.as_array() - target)) < 1e-10 for s in solutions)
