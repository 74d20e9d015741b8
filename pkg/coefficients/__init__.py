from .catalog import available_methods, basic_leapfrog, bundled_sets, catalog_lookup, verify_coefficient_set
from .condition_counts import lie_dimension, minimum_stages, order_condition_counts, reduced_condition_count
from .construction import conjugate_set, construct_triple_jump, predicted_pseudo_symmetry_order, projected_order_for
from .error_model import basic_error_model, effective_error_curve, effective_error_terms, scaled_error_coefficient
from .order_conditions import classify_symmetry, eval_order_conditions, parity_violations, structural_tolerance

__all__ = [
    'available_methods', 'basic_leapfrog', 'bundled_sets', 'catalog_lookup', 'verify_coefficient_set',
    'lie_dimension', 'minimum_stages', 'order_condition_counts', 'reduced_condition_count',
    'conjugate_set', 'construct_triple_jump', 'predicted_pseudo_symmetry_order', 'projected_order_for',
    'basic_error_model', 'effective_error_curve', 'effective_error_terms', 'scaled_error_coefficient',
    'classify_symmetry', 'eval_order_conditions', 'parity_violations', 'structural_tolerance',
]
