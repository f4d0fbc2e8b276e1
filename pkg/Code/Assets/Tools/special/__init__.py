from .elliptic import elliptic_K
from .hermite import derivative_coefficients, gauss_hermite_norm, hermite_eval, hermite_functions

__all__ = ["elliptic_K", "derivative_coefficients", "gauss_hermite_norm", "hermite_eval", "hermite_functions"]
