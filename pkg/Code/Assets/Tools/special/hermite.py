"""
Hermite functions ψ_k(x) = H_k(x) e^{−x²/2} / √(2^k k! √π) via the three-term recurrence

    ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}.

Values are carried with a per-point logarithmic scale so that |x| up to ~40 and
10⁴ terms neither overflow nor underflow midway.
"""
from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np
from scipy.special import roots_hermite

PI_QUARTER = np.pi ** -0.25
_RESCALE = 1e150
_LOG_RESCALE = np.log(_RESCALE)


def _recurrence(n_terms: int, x: np.ndarray) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yield (scaled ψ_k, log scale) with ψ_k = scaled · exp(log scale)."""
    log_scale = -0.5 * x * x
    prev = np.zeros_like(x)
    cur = np.full_like(x, PI_QUARTER)
    yield cur, log_scale
    for k in range(1, n_terms):
        prev, cur = cur, np.sqrt(2.0 / k) * x * cur - np.sqrt((k - 1) / k) * prev
        big = np.abs(cur) > _RESCALE
        if big.any():
            prev = np.where(big, prev / _RESCALE, prev)
            cur = np.where(big, cur / _RESCALE, cur)
            log_scale = np.where(big, log_scale + _LOG_RESCALE, log_scale)
        yield cur, log_scale


def _unscale(values: np.ndarray, log_scale: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.sign(values) * np.exp(np.log(np.abs(values)) + log_scale)


def hermite_functions(n_terms: int, x) -> np.ndarray:
    """Matrix of ψ_k(x_j), shape (n_terms, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_terms, x.size))
    for k, (cur, log_scale) in enumerate(_recurrence(n_terms, x)):
        out[k] = _unscale(cur, log_scale)
    return out


def hermite_eval(coefficients, x, *, gaussian: bool = True):
    """Σ c_k ψ_k(x). With ``gaussian=False`` the factor e^{−x²/2} is left out."""
    c = np.asarray(coefficients, dtype=float)
    xs = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xs).ravel()
    acc = np.zeros_like(flat)
    last = None
    for k, (cur, log_scale) in enumerate(_recurrence(len(c), flat)):
        if last is not None and (log_scale != last).any():
            acc = acc * np.exp(last - log_scale)
        acc = acc + c[k] * cur
        last = log_scale
    if last is None:
        return np.zeros_like(xs) if xs.ndim else 0.0
    if not gaussian:
        last = last + 0.5 * flat * flat
    out = _unscale(acc, last).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def derivative_coefficients(coefficients) -> np.ndarray:
    """Coefficients of ψ′: c′_k = (√(k+1) c_{k+1} − √k c_{k−1}) / √2, one entry longer."""
    c = np.asarray(coefficients, dtype=float)
    padded = np.concatenate([c, [0.0, 0.0]])
    k = np.arange(len(c) + 1, dtype=float)
    lower = np.concatenate([[0.0], c])
    return (np.sqrt(k + 1.0) * padded[1 : len(c) + 2] - np.sqrt(k) * lower) / np.sqrt(2.0)


def gauss_hermite_norm(coefficients, nodes: int = 400) -> float:
    """∫ (Σ c_k ψ_k)² dx by Gauss–Hermite quadrature.

    Uses at least len(c) nodes, which makes the rule exact. Weights of far nodes
    underflow to zero and are dropped.
    """
    c = np.asarray(coefficients, dtype=float)
    x, w = roots_hermite(max(nodes, len(c)))
    keep = w > 0
    values = hermite_eval(c, x[keep])
    return float(np.sum(np.exp(np.log(w[keep]) + x[keep] ** 2) * values**2))

