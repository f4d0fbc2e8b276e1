from .eigensolvers import (
    EigenPair,
    SolverId,
    dense_min_eigenpair,
    fix_sign,
    lanczos_min_eigenpair,
    min_eigenpair,
    rayleigh_residual,
    trial_value,
)

__all__ = [
    "EigenPair", "SolverId", "dense_min_eigenpair", "fix_sign", "lanczos_min_eigenpair",
    "min_eigenpair", "rayleigh_residual", "trial_value",
]
