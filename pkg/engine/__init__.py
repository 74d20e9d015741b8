from .integrator import base_step, composition_step, integrate, step_count, trajectory_header, trajectory_rows
from .split_system import SeparableHamiltonian, SplitSystem

__all__ = ['base_step', 'composition_step', 'integrate', 'step_count', 'trajectory_header', 'trajectory_rows',
           'SeparableHamiltonian', 'SplitSystem']
