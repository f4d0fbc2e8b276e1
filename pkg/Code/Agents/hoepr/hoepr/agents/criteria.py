"""
Criterion evaluation engine: threshold lookup, evaluation of any StateSpec
against any implemented condition, hierarchy checks and the factorizable
fourth-order extremum.
"""
from __future__ import annotations

import logging
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from Code.Assets.Tools.core.errors import TruncationTailError
from Code.Assets.Tools.fock import factorizable_quartic, to_fock_matrix
from Code.Assets.Tools.linalg import min_eigenpair, trial_value
from Code.Agents.hoepr.hoepr.agents import gaussian, states
from Code.Agents.hoepr.hoepr.models import (
    CriterionId,
    CriterionKind,
    CriterionReport,
    HierarchyReport,
    HierarchyRow,
    StateSpec,
    ThresholdEntry,
)
from Knowledge.Schema.threshold_registry import BIPARTITE_LAMBDA, threshold_registry

logger = logging.getLogger(__name__)

VERDICT_TOL = 1e-8


def threshold(criterion: CriterionId) -> ThresholdEntry:
    return threshold_registry.get(criterion)


def _gaussian_value(state: StateSpec, criterion: CriterionId) -> Tuple[float, Optional[float]]:
    cov = state.covariance
    if criterion.kind == "duan_higher":
        return gaussian.duan_higher_value(cov, criterion.order, criterion.sign), None
    centered = criterion.kind == "dbS"
    return gaussian.power_value(cov, criterion.order, criterion.sign, centered=centered)


def _fock_value(state: StateSpec, criterion: CriterionId, truncation: Optional[int]) -> Tuple[float, Optional[float], int]:
    degree = criterion.order if criterion.kind == "duan_higher" else 2 * criterion.order
    C = states.coefficient_matrix(state, truncation, degree=degree)
    K = C.shape[0]
    if criterion.kind == "duan_higher":
        return states.fock_duan_value(C, criterion.order, criterion.sign), None, K
    n_a, anti_b, cross = states.fock_power_moments(C, criterion.order, centered=criterion.kind == "dbS")
    value = n_a + anti_b + 2 * criterion.sign_value * cross
    return value, n_a + anti_b - 2 * abs(cross), K


def evaluate(
    state: StateSpec,
    criterion: CriterionId,
    truncation: Optional[int] = None,
    tol: float = VERDICT_TOL,
) -> CriterionReport:
    """Value of ``criterion`` on ``state`` compared with its tightest threshold.

    Fock-series states are contracted on their truncated coefficients; Gaussian
    states use moments of the covariance and mean. A series too slow to truncate
    falls back to its closed form when one exists.
    """
    entry = threshold(criterion)
    K: Optional[int] = None
    if state.family == "gaussian":
        value, strict = _gaussian_value(state, criterion)
    else:
        try:
            value, strict, K = _fock_value(state, criterion, truncation)
        except TruncationTailError:
            value, strict = closed_form(state, criterion), None
            if value is None:
                raise
            logger.warning("criteria: %s series does not truncate, using closed form", state.family)
    verdict = "entangled" if value < entry.value - tol else "inconclusive"
    logger.info("criteria: %s on %s -> %.10g (threshold %.6g, %s)", criterion.label, state.family, value, entry.value, verdict)
    return CriterionReport(
        criterion=criterion.kind,
        order=criterion.order,
        sign=criterion.sign,
        value=float(value),
        threshold=entry.value,
        provenance=entry.provenance,
        verdict=verdict,
        margin=entry.value - float(value),
        truncation=K,
        strict_value=None if strict is None else float(strict),
    )


def evaluate_best_sign(
    state: StateSpec,
    kind: CriterionKind,
    order: int = 2,
    truncation: Optional[int] = None,
) -> CriterionReport:
    reports = [evaluate(state, CriterionId(kind=kind, order=order, sign=s), truncation) for s in ("plus", "minus")]
    return min(reports, key=lambda r: r.value)


def hierarchy_consistency(values: Optional[Dict[int, float]] = None) -> HierarchyReport:
    """Λ(4n) > ½ Λ(2n)² for every pair of orders present; raises when violated."""
    values = values or BIPARTITE_LAMBDA
    rows = []
    for lower in sorted(values):
        upper = 2 * lower
        if upper not in values:
            continue
        bound = 0.5 * values[lower] ** 2
        rows.append(
            HierarchyRow(
                lower_order=lower,
                upper_order=upper,
                lower_value=values[lower],
                upper_value=values[upper],
                bound=bound,
                holds=values[upper] > bound,
            )
        )
    report = HierarchyReport(rows=rows, holds=all(r.holds for r in rows))
    if not report.holds:
        broken = [f"{r.lower_order}->{r.upper_order}" for r in rows if not r.holds]
        raise RuntimeError(f"hierarchy relation violated for {', '.join(broken)}")
    return report


def factorizable_fourth_order_extremum(truncation: int = 400, tol: float = 1e-10) -> float:
    """6 + ½ λ_min(a⁴ + a†⁴ + 6a†²a² + 24a†a): order-4 value on the best |ψ⟩⊗|0⟩."""
    matrix = to_fock_matrix(factorizable_quartic(), truncation, order_tag=4)
    pair = min_eigenpair(matrix, tol, solver="banded_iterative")
    logger.info("criteria: factorizable quartic minimum %.8f", pair.eigenvalue)
    return 6.0 + 0.5 * pair.eigenvalue


def factorizable_trial_extremum(truncation: int = 8) -> Tuple[float, float]:
    """Best N(|0⟩ + c|4⟩) trial: returns (c, 6 + ½ ⟨quartic⟩)."""
    matrix = to_fock_matrix(factorizable_quartic(), truncation)

    def value(c: float) -> float:
        v = np.zeros(5)
        v[0], v[4] = 1.0, c
        return trial_value(matrix, v)

    res = minimize_scalar(value, bounds=(-0.5, 0.5), method="bounded", options={"xatol": 1e-10})
    return float(res.x), 6.0 + 0.5 * float(res.fun)


def threshold_chain(criterion: CriterionId) -> Iterable[float]:
    return [step.value for step in threshold(criterion).chain]


def closed_form(state: StateSpec, criterion: CriterionId) -> Optional[float]:
    """Analytic value of ``criterion`` on ``state`` where one is known, else None."""
    if state.family == "squeezed_vacuum" and criterion.kind == "duan_higher":
        # both quadrature sums carry the same moment on the squeezed vacuum
        return 2.0 * states.squeezed_moment(criterion.order // 2, state.lam, criterion.sign)
    if state.family == "psi_n" and criterion.kind == "power" and criterion.order == state.n:
        return states.criterion_value_psi_n(state.n, state.xi, criterion.sign)
    if state.family == "psi2_prime" and criterion.kind == "power" and criterion.order == 2:
        return states.criterion_value_psi2_prime(state.xi, criterion.sign)
    return None
