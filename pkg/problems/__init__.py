from .hamiltonians import HarmonicOscillator, Kepler, Pendulum, harmonic_oscillator, kepler, pendulum
from .linear_oracle import LinearSplitOracle, linear_split_oracle
from .polynomial import HPolynomialMatrix, ho_exact_taylor, ho_step_matrix, ho_step_polynomial
from .reference import reference_final_state, reference_solution

__all__ = ['HarmonicOscillator', 'Kepler', 'Pendulum', 'harmonic_oscillator', 'kepler', 'pendulum',
           'LinearSplitOracle', 'linear_split_oracle',
           'HPolynomialMatrix', 'ho_exact_taylor', 'ho_step_matrix', 'ho_step_polynomial',
           'reference_final_state', 'reference_solution']
