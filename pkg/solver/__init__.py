from .multistart import MultistartSearch, multistart_search
from .newton import newton_solve, params_to_alphas, polish, residual_vector, set_to_params

__all__ = ['MultistartSearch', 'multistart_search', 'newton_solve', 'params_to_alphas', 'polish',
           'residual_vector', 'set_to_params']
