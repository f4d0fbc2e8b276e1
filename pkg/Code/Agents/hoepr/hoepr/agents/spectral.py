"""
Minimal eigenpairs of truncated x^{2n} + p^{2n} and of its two-mode counterpart.

Inputs:  order 2n, truncation N (per mode for bipartite problems), tolerance, solver id
Outputs: EigenResult, SweepReport, ScalingCheck, Schmidt spectra and moment checks
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from math import factorial, sqrt
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from Code.Assets.Tools.fock.matrices import (
    BandedFockMatrix,
    FockMatrix,
    SparseFockMatrix,
    bipartite_quadrature_matrix,
    to_fock_matrix,
)
from Code.Assets.Tools.fock.operators import expand_quadrature_power, expand_sum
from Code.Assets.Tools.linalg.eigensolvers import SolverId
from Code.Assets.Tools.linalg import eigensolvers
from Code.Agents.hoepr.hoepr.models import (
    BipartiteFockVector,
    EigenResult,
    FockVector,
    GrowthReport,
    MomentPair,
    ScalingCheck,
    SweepPoint,
    SweepReport,
    default_truncation,
)

logger = logging.getLogger(__name__)

SignName = Literal["plus", "minus"]

# relative gap allowed between Λ and 2ⁿλ at 40 states per mode
SCALING_TOL = 1e-4
# product-basis operators reach norms near 1e6, which puts the residual floor above 1e-10
BIPARTITE_RESIDUAL_TOL = 1e-8


@lru_cache(maxsize=32)
def quadrature_sum_matrix(order: int, truncation: int) -> BandedFockMatrix:
    return to_fock_matrix(expand_sum(order), truncation, order_tag=order)


def min_eigenpair(
    matrix: FockMatrix,
    tol: float = 1e-10,
    solver: SolverId = "banded_iterative",
    dense_cap: int = 4000,
) -> EigenResult:
    pair = eigensolvers.min_eigenpair(matrix, tol, solver=solver, dense_cap=dense_cap)
    v = pair.vector / np.linalg.norm(pair.vector)
    if isinstance(matrix, SparseFockMatrix):
        vector = BipartiteFockVector(v.reshape(matrix.per_mode, matrix.per_mode))
        truncation = matrix.per_mode
    else:
        vector = FockVector(v)
        truncation = matrix.size
    logger.info(
        "spectral: order=%s N=%d lambda=%.10f residual=%.2e solver=%s",
        matrix.order_tag, truncation, pair.eigenvalue, pair.residual_norm, pair.solver_id,
    )
    return EigenResult(
        eigenvalue=pair.eigenvalue,
        vector=vector,
        truncation=truncation,
        residual_norm=pair.residual_norm,
        solver_id=pair.solver_id,
        iterations=pair.iterations,
    )


def minimizer(
    order: int,
    truncation: Optional[int] = None,
    tol: float = 1e-10,
    solver: SolverId = "banded_iterative",
) -> EigenResult:
    """λ⁽²ⁿ⁾_min and its Fock coefficients at the default truncation for the order."""
    N = truncation or default_truncation(order)
    return min_eigenpair(quadrature_sum_matrix(order, N), tol, solver)


def truncation_sweep(
    order: int,
    schedule: Sequence[int],
    tol: float,
    solver: SolverId = "banded_iterative",
    residual_tol: float = 1e-10,
    threads: int = 1,
) -> SweepReport:
    """Solve at each N of a strictly increasing schedule.

    Nested truncations give nested trial spaces, so λ(N) can only go down; the
    monotonicity flag allows rounding-level increases only.
    """
    schedule = list(schedule)
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")

    def solve(N: int) -> EigenResult:
        return min_eigenpair(quadrature_sum_matrix(order, N), residual_tol, solver)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(solve, schedule))

    points = [SweepPoint(N=N, eigenvalue=r.eigenvalue, residual=r.residual_norm) for N, r in zip(schedule, results)]
    monotone = all(
        b.eigenvalue <= a.eigenvalue + 1e-12 * max(1.0, abs(a.eigenvalue))
        for a, b in zip(points, points[1:])
    )
    converged_at = next(
        (b.N for a, b in zip(points, points[1:]) if abs(b.eigenvalue - a.eigenvalue) < tol),
        None,
    )
    return SweepReport(order=order, points=points, monotone=monotone, converged=converged_at is not None, converged_at=converged_at)


def build_bipartite_matrix(order: int, sign: SignName, truncation: int, max_dim: int = 90_000) -> SparseFockMatrix:
    """⟨(x_a ± x_b)^{2n} + (p_a ± p_b)^{2n}⟩ on the product basis of two truncated modes."""
    expand_sum(order)  # validates the order
    if truncation < 2:
        raise ValueError("bipartite truncation must be >= 2 per mode")
    return bipartite_quadrature_matrix(order, 1 if sign == "plus" else -1, truncation, max_dim)


def scaling_identity_report(
    order: int,
    per_mode: int,
    tol: float,
    sign: SignName = "plus",
    solver: SolverId = "dense",
    single_mode: Optional[EigenResult] = None,
    max_dim: int = 90_000,
    bipartite_result: Optional[EigenResult] = None,
) -> ScalingCheck:
    """Compare Λ⁽²ⁿ⁾ on the product basis with 2ⁿ λ⁽²ⁿ⁾ of one mode; either solve may be passed in."""
    n = order // 2
    big = bipartite_result or min_eigenpair(
        build_bipartite_matrix(order, sign, per_mode, max_dim), BIPARTITE_RESIDUAL_TOL, solver, max_dim
    )
    single = single_mode or minimizer(order)
    ratio = big.eigenvalue / single.eigenvalue
    holds = abs(big.eigenvalue - 2**n * single.eigenvalue) <= tol * big.eigenvalue
    return ScalingCheck(
        order=order,
        per_mode=per_mode,
        bipartite_eigenvalue=big.eigenvalue,
        single_mode_eigenvalue=single.eigenvalue,
        ratio=ratio,
        tol=tol,
        holds=holds,
    )


def verify_scaling_identity(order: int, per_mode: int, tol: float) -> bool:
    return scaling_identity_report(order, per_mode, tol).holds


def eigenstate_moments(result: EigenResult, order: int) -> MomentPair:
    """⟨x^{2n}⟩ and ⟨p^{2n}⟩ on a single-mode eigenvector."""
    if not isinstance(result.vector, FockVector):
        raise TypeError("eigenstate_moments needs a single-mode result")
    c = result.vector.coefficients
    N = len(c)
    x = to_fock_matrix(expand_quadrature_power("X", order), N).matvec(c) @ c
    p = to_fock_matrix(expand_quadrature_power("P", order), N).matvec(c) @ c
    return MomentPair(x_moment=float(x), p_moment=float(p))


def schmidt_spectrum(state: BipartiteFockVector) -> np.ndarray:
    return np.linalg.svd(state.coefficients, compute_uv=False)


def entanglement_entropy(spectrum: np.ndarray) -> float:
    """Von Neumann entropy (nats) of the reduced state with Schmidt coefficients ``spectrum``."""
    p = np.asarray(spectrum) ** 2
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log(p)))


def heisenberg_product_bound(n: int) -> float:
    """⟨x^{2n}⟩⟨p^{2n}⟩ on the vacuum, ((2n)!/(2^{2n} n!))².

    A lower bound only for n = 1. The x^{2n} + p^{2n} minimizers trade a Gaussian
    profile for a smaller product once n ≥ 2; ``moment_product_floor`` holds for all n.
    """
    return (factorial(2 * n) / (4**n * factorial(n))) ** 2


def moment_product_floor(n: int) -> float:
    """⟨x^{2n}⟩⟨p^{2n}⟩ ≥ (⟨x²⟩⟨p²⟩)ⁿ ≥ 4⁻ⁿ for every state."""
    return 0.25**n


def fourth_order_lower_function(A, B):
    """3/2 + 3A + 6B − √(A(A + 4B + 2)) with A = ⟨a†²a²⟩, B = ⟨a†a⟩; a lower bound on ⟨x⁴ + p⁴⟩."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    return 1.5 + 3.0 * A + 6.0 * B - np.sqrt(A * (A + 4.0 * B + 2.0))


def analytic_fourth_order_bound() -> float:
    """Closed-form lower bound 3/2 − δ, δ = 3 − 2√2, on λ⁽⁴⁾_min.

    Minimum of ``fourth_order_lower_function`` over A, B ≥ 0, reached at A = δ/(2√2), B = 0.
    """
    return 1.5 - (3.0 - 2.0 * sqrt(2.0))


def growth_ratios(eigenvalues: Dict[int, float]) -> List[Tuple[int, float]]:
    """λ⁽²⁽ⁿ⁺¹⁾⁾/λ⁽²ⁿ⁾ for consecutive orders present in ``eigenvalues`` (keyed by 2n)."""
    orders = sorted(eigenvalues)
    return [(b, eigenvalues[b] / eigenvalues[a]) for a, b in zip(orders, orders[1:]) if b == a + 2]


def doubling_relation(eigenvalues: Dict[int, float]) -> List[Tuple[int, bool]]:
    """λ⁽⁴ⁿ⁾ > ½ (λ⁽²ⁿ⁾)² wherever both orders are present."""
    return [
        (order, eigenvalues[2 * order] > 0.5 * eigenvalues[order] ** 2)
        for order in sorted(eigenvalues)
        if 2 * order in eigenvalues
    ]


class SpectralAgent:
    """Holds solver settings so stages and the workflow share one configuration."""

    def __init__(
        self,
        tol: float = 1e-10,
        solver: SolverId = "banded_iterative",
        dense_cap: int = 4000,
        bipartite_cap: int = 90_000,
    ) -> None:
        self.tol = tol
        self.solver = solver
        self.dense_cap = dense_cap
        self.bipartite_cap = bipartite_cap

    def run(self, order: int, truncation: Optional[int] = None) -> EigenResult:
        N = truncation or default_truncation(order)
        return min_eigenpair(quadrature_sum_matrix(order, N), self.tol, self.solver, self.dense_cap)

    def bipartite(self, order: int, sign: SignName, per_mode: int) -> EigenResult:
        matrix = build_bipartite_matrix(order, sign, per_mode, self.bipartite_cap)
        return min_eigenpair(matrix, max(self.tol, BIPARTITE_RESIDUAL_TOL), self.solver, self.bipartite_cap)


def eigenvalue_growth_report(
    orders: Sequence[int] = (2, 4, 6, 8, 10, 12),
    truncation: Optional[int] = None,
    tol: float = 1e-10,
    threads: int = 1,
) -> GrowthReport:
    """λ⁽²ⁿ⁾ across orders, their successive ratios and the doubling relation."""

    def solve(order: int) -> float:
        return minimizer(order, truncation, tol).eigenvalue

    with ThreadPoolExecutor(max_workers=threads) as pool:
        eigenvalues = dict(zip(orders, pool.map(solve, orders)))
    ratios = growth_ratios(eigenvalues)
    return GrowthReport(
        eigenvalues=eigenvalues,
        ratios=ratios,
        ratios_increasing=all(b[1] > a[1] for a, b in zip(ratios, ratios[1:])),
        doubling=doubling_relation(eigenvalues),
    )
