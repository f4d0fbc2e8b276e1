from .operators import (
    OperatorPolynomial,
    expand_quadrature_power,
    expand_sum,
    factorizable_quartic,
    ladder_power,
    vacuum_expectation,
    vacuum_expectation_exact,
)
from .matrices import (
    BandedFockMatrix,
    FockMatrix,
    SparseFockMatrix,
    bipartite_quadrature_matrix,
    ladder_power_matrix,
    monomial_elements,
    to_fock_matrix,
)

__all__ = [
    "OperatorPolynomial", "expand_quadrature_power", "expand_sum", "factorizable_quartic",
    "ladder_power", "vacuum_expectation", "vacuum_expectation_exact",
    "BandedFockMatrix", "FockMatrix", "SparseFockMatrix", "bipartite_quadrature_matrix",
    "ladder_power_matrix", "monomial_elements", "to_fock_matrix",
]
