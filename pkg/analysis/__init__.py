from .benchmarks import energy_drift, work_precision
from .convergence import convergence_order, fit_slope, geometric_grid, local_error_order
from .stability import spectral_radius, stability_limit
from .symmetry_probes import (linear_order_degree, nonlinear_symmetry_probe, pseudo_symmetry_degree,
                              pseudo_symplecticity_degree, readout_symmetry_degree)

__all__ = ['energy_drift', 'work_precision', 'convergence_order', 'fit_slope', 'geometric_grid',
           'local_error_order', 'spectral_radius', 'stability_limit', 'linear_order_degree',
           'nonlinear_symmetry_probe', 'pseudo_symmetry_degree', 'pseudo_symplecticity_degree',
           'readout_symmetry_degree']
