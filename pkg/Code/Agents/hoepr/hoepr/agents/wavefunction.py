"""
Real-space minimizing wave functions built from Fock coefficients.

Inputs:  FockVector of a converged minimizer, its order 2n and eigenvalue
Outputs: grid values, derivatives at the origin, ODE residuals, Bessel–Gauss fit
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import minimize
from scipy.special import j0

from Code.Assets.Tools.core.errors import NonConvergenceError
from Code.Assets.Tools.special import derivative_coefficients, elliptic_K, hermite_eval
from Code.Agents.hoepr.hoepr.models import BesselGaussFit, DerivativeTable, EigenResult, FockVector

logger = logging.getLogger(__name__)

Grid = Tuple[float, float, float]

FIT_GRID: Grid = (-6.0, 6.0, 0.01)
FIT_STARTS = ((0.0, 0.5), (0.3, 0.42), (0.35, 0.40), (0.3, 0.43))
# Hermite coefficients below this fraction of the largest one are rounding noise
TAIL_CUT = 1e-18


def grid_points(grid: Grid) -> np.ndarray:
    lo, hi, step = grid
    count = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(count)


def _coefficients(coeffs) -> np.ndarray:
    c = coeffs.coefficients if isinstance(coeffs, FockVector) else np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return c
    significant = np.flatnonzero(np.abs(c) > TAIL_CUT * scale)
    return c[: significant[-1] + 1]


def derivative_series(coeffs, order: int) -> np.ndarray:
    """Hermite coefficients of the ``order``-th derivative."""
    c = _coefficients(coeffs)
    for _ in range(order):
        c = derivative_coefficients(c)
    return c


def derivatives_at_zero(coeffs, max_order: int, order: Optional[int] = None) -> List[float]:
    """ψ(0), ψ′(0), …, ψ^{(max_order)}(0); odd entries are exact zeros for even minimizers.

    Above 2n−2 the derivatives are fixed by the eigen-equation and are not taken
    from the coefficients.
    """
    if max_order < 0:
        raise ValueError("max_order must be non-negative")
    if order is not None and max_order > max(order - 2, 0):
        raise ValueError(f"derivatives above order {order - 2} are not computed from coefficients")
    c = _coefficients(coeffs)
    values: List[float] = []
    for m in range(max_order + 1):
        values.append(0.0 if m % 2 else float(hermite_eval(c, 0.0)))
        c = derivative_coefficients(c)
    return values


def derivative_table(result: EigenResult, order: int, max_order: Optional[int] = None) -> DerivativeTable:
    top = order - 2 if max_order is None else max_order
    values = derivatives_at_zero(result.vector, top, order)
    return DerivativeTable(order=order, eigenvalue=result.eigenvalue, derivatives=values)


def ode_residual(coeffs, order: int, eigenvalue: float, grid: Grid = (-5.0, 5.0, 0.01)) -> float:
    """max |x^{2n}ψ + (−1)ⁿψ^{(2n)} − λψ| over the grid."""
    x = grid_points(grid)
    c = _coefficients(coeffs)
    psi = hermite_eval(c, x)
    d2n = hermite_eval(derivative_series(c, order), x)
    residual = x**order * psi + (-1) ** (order // 2) * d2n - eigenvalue * psi
    return float(np.max(np.abs(residual)))


def wave_grid(coeffs, grid: Grid, derivs: int = 0) -> pd.DataFrame:
    """Columns x, psi and d1 … d{derivs}."""
    x = grid_points(grid)
    c = _coefficients(coeffs)
    frame = {"x": x, "psi": hermite_eval(c, x)}
    for m in range(1, derivs + 1):
        c = derivative_coefficients(c)
        frame[f"d{m}"] = hermite_eval(c, x)
    return pd.DataFrame(frame)


# ── Bessel–Gauss approximant ─────────────────────────────────────────────────

def k_argument(a: float, b: float) -> float:
    """Modulus of K in the normalization of c J₀(a x²) e^{−b x²}; lies in [0, 1/√2)."""
    if a < 0 or b <= 0:
        raise ValueError("need a >= 0 and b > 0")
    s = np.hypot(a, b)
    r = 2.0 * b / (s + b)
    return float(np.sqrt(a * a / (2.0 * (s + b) ** 2 * (1.0 + np.sqrt(r)))))


def normalization_c(a: float, b: float) -> float:
    """c > 0 with ∫ c² J₀(a x²)² e^{−2b x²} dx = 1."""
    s = np.hypot(a, b)
    return float(0.5 * np.pi**0.75 * (s + b) ** 0.25 / elliptic_K(k_argument(a, b)))


def bessel_gauss(a: float, b: float, x):
    x2 = np.asarray(x, dtype=float) ** 2
    return normalization_c(a, b) * j0(a * x2) * np.exp(-b * x2)


def fit_bessel_gauss(coeffs, grid: Grid = FIT_GRID, starts: Sequence[Tuple[float, float]] = FIT_STARTS) -> BesselGaussFit:
    """Minimize the relative sup-norm max|ψ_{a,b} − ψ| / max|ψ| on ``grid`` by Nelder–Mead."""
    x = grid_points(grid)
    target = hermite_eval(_coefficients(coeffs), x)
    scale = np.max(np.abs(target))

    def objective(p: np.ndarray) -> float:
        a, b = p
        if a < 0 or b <= 0:
            return np.inf
        return float(np.max(np.abs(bessel_gauss(a, b, x) - target)) / scale)

    best = None
    evaluations = 0
    for start in starts:
        res = minimize(
            objective,
            np.asarray(start, dtype=float),
            method="Nelder-Mead",
            bounds=[(0.0, 2.0), (1e-3, 2.0)],
            options={"xatol": 1e-7, "fatol": 1e-10, "maxiter": 4000, "maxfev": 8000},
        )
        evaluations += int(res.nfev)
        logger.debug("fit: start=%s -> a=%.6f b=%.6f err=%.3e", start, res.x[0], res.x[1], res.fun)
        if best is None or res.fun < best.fun:
            best = res
    if not best.success:
        raise NonConvergenceError(f"Bessel-Gauss fit did not converge: {best.message}", best=best)
    a, b = (float(v) for v in best.x)
    logger.info("fit: a=%.6f b=%.6f c=%.6f max_rel_error=%.3e", a, b, normalization_c(a, b), best.fun)
    return BesselGaussFit(a=a, b=b, c=normalization_c(a, b), max_rel_error=float(best.fun), evaluations=evaluations)
