"""
Analytic two-mode state families, their truncated Fock coefficients and the
Fock-space contractions the criteria engine evaluates on them.

Families:
  squeezed_vacuum(λ)  √(1−λ²) Σ λᵏ |k, k⟩
  psi_n(n, ξ)         N_n(ξ) Σ ξᵏ / √∏_{j=1}^{n−1}(nk+j) |nk+n−1, nk⟩
  psi2_prime(ξ)       N′(ξ) Σ ξᵏ / √(2k+2) |2k+2, 2k+1⟩
"""
from __future__ import annotations

import logging
from math import comb, factorial, log, sqrt
from typing import Iterator, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.integrate import quad
from scipy.special import erfc, erfcx, wofz

from Code.Assets.Tools.core.errors import DomainError, InvalidOrderError, TruncationTailError
from Code.Assets.Tools.fock.matrices import ladder_power_matrix, monomial_elements
from Code.Assets.Tools.special import hermite_functions
from Code.Agents.hoepr.hoepr.models import BipartiteFockVector, Sign, StateSpec

logger = logging.getLogger(__name__)

TAIL_TOL = 1e-10
AUTO_TAIL = 1e-12
MAX_TERMS = 20_000
SMALL_XI = 1e-4

Triplets = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _sign_value(sign: Sign) -> int:
    return 1 if sign == "plus" else -1


# ── normalizations and closed-form criterion values ─────────────────────────

def _xi_over_atanh(xi: float) -> float:
    if abs(xi) < SMALL_XI:
        x2 = xi * xi
        return 1.0 - x2 / 3.0 - 4.0 * x2 * x2 / 45.0
    return xi / np.arctanh(xi)


def _xi2_over_log(xi: float) -> float:
    """ξ² / (−ln(1 − ξ²))."""
    if abs(xi) < SMALL_XI:
        x2 = xi * xi
        return 1.0 - x2 / 2.0 - x2 * x2 / 12.0
    return xi * xi / -np.log1p(-xi * xi)


def psi_n_norm(n: int, xi: float) -> float:
    """N_n(ξ) > 0 from N² Σ ξ²ᵏ/∏_{j=1}^{n−1}(nk+j) = 1.

    The series equals (1/(n−2)!) ∫₀¹ (1−t)^{n−2} / (1 − ξ²tⁿ) dt, which stays finite
    at |ξ| = 1 for n ≥ 3 and is integrated directly.
    """
    if n < 2:
        raise InvalidOrderError(f"psi_n needs n >= 2, got {n}")
    if n == 2:
        if not abs(xi) < 1:
            raise DomainError("psi_2 is normalizable only for |xi| < 1")
        return sqrt(_xi_over_atanh(xi))
    if not abs(xi) <= 1:
        raise DomainError(f"psi_{n} needs |xi| <= 1")
    if xi == 0:
        return sqrt(float(factorial(n - 1)))
    log_xi2 = 2.0 * log(abs(xi))

    def integrand(t: float) -> float:
        if t == 0.0:
            return 1.0
        return (1.0 - t) ** (n - 2) / -np.expm1(log_xi2 + n * log(t))

    total, _ = quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=200)
    return sqrt(factorial(n - 2) / total)


def psi2_prime_norm(xi: float) -> float:
    if not abs(xi) < 1:
        raise DomainError("psi2_prime needs |xi| < 1")
    return sqrt(2.0 * _xi2_over_log(xi))


def squeezed_moment(n: int, lam: float, sign: Sign) -> float:
    """⟨(x_a ± x_b)^{2n}⟩ = (2n)!/(2ⁿ n!) ((1 ± λ)/(1 ∓ λ))ⁿ on the two-mode squeezed vacuum."""
    if n < 1:
        raise InvalidOrderError(f"n must be >= 1, got {n}")
    if not abs(lam) < 1:
        raise DomainError("squeezed vacuum needs |lam| < 1")
    s = _sign_value(sign)
    return factorial(2 * n) / (2**n * factorial(n)) * ((1 + s * lam) / (1 - s * lam)) ** n


def criterion_value_psi_n(n: int, xi: float, sign: Sign) -> float:
    """⟨(a†ⁿ ± bⁿ)(aⁿ ± b†ⁿ)⟩ = N_n² n / (1 ∓ ξ)²."""
    s = _sign_value(sign)
    denom = (1.0 - s * xi) ** 2
    if denom == 0.0:
        raise DomainError(f"value diverges at xi = {xi} for sign {sign}")
    return psi_n_norm(n, xi) ** 2 * n / denom


def criterion_value_psi2_prime(xi: float, sign: Sign) -> float:
    """−4ξ²(2 ∓ ξ) / (ln(1 − ξ²)(1 ∓ ξ)²); equals 8 at ξ = 0."""
    if not abs(xi) < 1:
        raise DomainError("psi2_prime needs |xi| < 1")
    s = _sign_value(sign)
    return 4.0 * _xi2_over_log(xi) * (2.0 - s * xi) / (1.0 - s * xi) ** 2


# ── coefficients ─────────────────────────────────────────────────────────────

def _moment_weight(level: int, degree: int) -> float:
    """Bound on a degree-d quadrature moment of two-mode Fock states near ``level``."""
    if degree <= 0:
        return 1.0
    half = degree // 2
    return factorial(degree) / (2**half * factorial(half)) * (2.0 * level + 2.0 * degree) ** (degree / 2)


def _terms_for_tail(xi: float, scale: float = 1.0, degree: int = 0, step: int = 1) -> int:
    """Smallest m with scale · w_d(m) · ξ^{2m}/(1 − ξ²) < AUTO_TAIL.

    ``degree`` is the operator degree the coefficients will be contracted with and
    term m sits near Fock level ``step``·m; w_d grows like (step·m)^{d/2}.
    """
    if xi == 0:
        return 1
    a = abs(xi)
    if a >= 1:
        return MAX_TERMS + 1
    m = max(1, int(np.ceil(log(AUTO_TAIL * (1 - a * a) / scale) / (2 * log(a)))))
    log_a2 = 2 * log(a)
    bound = log(scale / (1 - a * a)) - log(AUTO_TAIL)
    while m <= MAX_TERMS and bound + log(_moment_weight(step * (m + 1), degree)) + m * log_a2 >= 0:
        m += 1
    return m


def _family_terms(spec: StateSpec) -> Tuple[int, int, int, float, float]:
    """(row step, row offset, column offset, ratio, normalization) for the diagonal-like families."""
    if spec.family == "squeezed_vacuum":
        return 1, 0, 0, spec.lam, sqrt(1.0 - spec.lam**2)
    if spec.family == "psi_n":
        return spec.n, spec.n - 1, 0, spec.xi, psi_n_norm(spec.n, spec.xi)
    if spec.family == "psi2_prime":
        return 2, 2, 1, spec.xi, psi2_prime_norm(spec.xi)
    raise ValueError(f"family {spec.family} has no series form")


def _series(spec: StateSpec, terms: int) -> Triplets:
    step, row_off, col_off, ratio, norm = _family_terms(spec)
    k = np.arange(terms, dtype=float)
    if spec.family == "psi_n":
        weight = np.ones_like(k)
        for j in range(1, spec.n):
            weight = weight * (spec.n * k + j)
        weight = 1.0 / np.sqrt(weight)
    elif spec.family == "psi2_prime":
        weight = 1.0 / np.sqrt(2.0 * k + 2.0)
    else:
        weight = np.ones_like(k)
    vals = norm * np.power(ratio, k) * weight
    rows = (step * k + row_off).astype(int)
    cols = (step * k + col_off).astype(int)
    return rows, cols, vals


def _auto_truncation(spec: StateSpec, degree: int = 0) -> int:
    ratio = spec.lam if spec.family == "squeezed_vacuum" else spec.xi
    step, *_, norm = _family_terms(spec)
    m = _terms_for_tail(ratio, max(1.0, norm**2), degree, step)
    if m > MAX_TERMS:
        raise TruncationTailError(
            f"{spec.family} at {ratio} needs more than {MAX_TERMS} series terms",
            tail_mass=float("nan"),
            K=MAX_TERMS,
        )
    rows, cols, _ = _series(spec, m)
    return int(max(rows.max(), cols.max())) + 1


def coefficient_matrix(
    spec: StateSpec, K: Optional[int] = None, tail_tol: float = TAIL_TOL, degree: int = 0
) -> sp.csr_matrix:
    """Renormalized K×K coefficient matrix c_{kl} in sparse form.

    ``K`` is the per-mode Fock dimension; ``None`` selects it from the geometric
    tail bound, weighted for contraction with a degree-``degree`` moment. Raises
    TruncationTailError when the discarded weight exceeds ``tail_tol``.
    """
    if spec.family == "gaussian":
        raise ValueError("gaussian states are evaluated from their covariance, not Fock coefficients")
    if spec.family == "explicit":
        c = spec.vector.coefficients
        K = K or max(c.shape)
        kept = np.zeros((K, K), dtype=c.dtype)
        r, q = min(K, c.shape[0]), min(K, c.shape[1])
        kept[:r, :q] = c[:r, :q]
        tail = max(0.0, 1.0 - float(np.sum(np.abs(kept) ** 2)))
        if tail > tail_tol:
            raise TruncationTailError(f"explicit state loses weight {tail:.3e} at K={K}", tail_mass=tail, K=K)
        return sp.csr_matrix(kept / np.linalg.norm(kept))

    K = K or _auto_truncation(spec, degree)
    step = _family_terms(spec)[0]
    rows, cols, vals = _series(spec, K // step + 2)
    keep = (rows < K) & (cols < K)
    kept = float(np.sum(vals[keep] ** 2))
    tail = max(0.0, 1.0 - kept)
    if tail > tail_tol:
        raise TruncationTailError(
            f"{spec.family} loses weight {tail:.3e} at K={K}", tail_mass=tail, K=K
        )
    logger.debug("states: %s K=%d tail=%.2e", spec.family, K, tail)
    m = sp.coo_matrix((vals[keep] / sqrt(kept), (rows[keep], cols[keep])), shape=(K, K))
    return m.tocsr()


def truncate_to_fock(spec: StateSpec, K: Optional[int] = None, tail_tol: float = TAIL_TOL) -> BipartiteFockVector:
    c = coefficient_matrix(spec, K, tail_tol).toarray()
    return BipartiteFockVector(c / np.linalg.norm(c))


# ── Fock-space contractions ─────────────────────────────────────────────────

def _lowering(power: int, dim: int) -> sp.csr_matrix:
    """aᵖ on the first ``dim`` Fock states (exact, no truncation loss)."""
    if power >= dim:
        return sp.csr_matrix((dim, dim))
    vals = monomial_elements(0, power, np.arange(power, dim))
    return sp.diags(vals, power, shape=(dim, dim), format="csr")


def _pad(C: sp.spmatrix, extra: int) -> sp.csr_matrix:
    K0, K1 = C.shape
    C = sp.coo_matrix(C)
    return sp.csr_matrix((C.data, (C.row, C.col)), shape=(K0 + extra, K1 + extra))


def _expect(C: sp.spmatrix, X: sp.spmatrix, Y: sp.spmatrix) -> float:
    """⟨ψ|X ⊗ Y|ψ⟩ for real coefficients C."""
    return float((C.multiply(X @ C @ Y.T)).sum())


def fock_mean(C: sp.spmatrix) -> Tuple[float, float]:
    """(⟨a⟩, ⟨b⟩)."""
    dim = C.shape[0]
    a = _lowering(1, dim)
    eye = sp.identity(dim, format="csr")
    return _expect(C, a, eye), _expect(C, eye, a)


def fock_power_moments(C: sp.spmatrix, n: int, centered: bool = False) -> Tuple[float, float, float]:
    """(⟨a†ⁿaⁿ⟩, ⟨bⁿb†ⁿ⟩, ⟨aⁿbⁿ⟩) with a → a − ⟨a⟩, b → b − ⟨b⟩ when ``centered``."""
    if n < 1:
        raise InvalidOrderError(f"n must be >= 1, got {n}")
    alpha, beta = fock_mean(C) if centered else (0.0, 0.0)
    P = _pad(C, n)
    dim = P.shape[0]
    a = _lowering(1, dim)
    eye = sp.identity(dim, format="csr")
    Ma = a - alpha * eye
    Mb = a - beta * eye
    An = eye
    Bn = eye
    for _ in range(n):
        An = An @ Ma
        Bn = Bn @ Mb
    left = An @ P
    right = P @ Bn
    n_a = float(left.multiply(left).sum())
    anti_b = float(right.multiply(right).sum())
    cross = _expect(P, An, Bn)
    return n_a, anti_b, cross


def fock_power_value(C: sp.spmatrix, n: int, sign: Sign, centered: bool = False) -> float:
    """⟨(a†ⁿ ± bⁿ)(aⁿ ± b†ⁿ)⟩ = ⟨a†ⁿaⁿ⟩ + ⟨bⁿb†ⁿ⟩ ± 2 Re⟨aⁿbⁿ⟩."""
    n_a, anti_b, cross = fock_power_moments(C, n, centered)
    return n_a + anti_b + 2 * _sign_value(sign) * cross


def fock_duan_value(C: sp.spmatrix, order: int, sign: Sign) -> float:
    """⟨(x_a ± x_b)^{2n} + (p_a ∓ p_b)^{2n}⟩ from pairs of single-mode ladder powers."""
    if order < 2 or order % 2:
        raise InvalidOrderError(f"order must be an even integer >= 2, got {order}")
    n = order // 2
    s = _sign_value(sign)
    t = -s
    dim = C.shape[0]
    X = [ladder_power_matrix(1, j, dim) for j in range(order + 1)]
    Q = [ladder_power_matrix(-1, j, dim) for j in range(order + 1)]
    total = 0.0
    for j in range(order + 1):
        w = comb(order, j) / 2**n
        total += w * s ** (order - j) * _expect(C, X[j], X[order - j])
        total += w * (-1) ** n * t ** (order - j) * _expect(C, Q[j], Q[order - j])
    return total


def squeezed_moment_fock(n: int, lam: float, sign: Sign, K: int = 200) -> float:
    """Quadratic form of (x_a ± x_b)^{2n} on the truncated squeezed vacuum."""
    C = coefficient_matrix(StateSpec.squeezed_vacuum(lam), K)
    s = _sign_value(sign)
    order = 2 * n
    X = [ladder_power_matrix(1, j, K) for j in range(order + 1)]
    return sum(comb(order, j) * s ** (order - j) * _expect(C, X[j], X[order - j]) for j in range(order + 1)) / 2**n


# ── closed-form wave functions ──────────────────────────────────────────────

def _weighted_erfc(z: np.ndarray, log_weight: np.ndarray) -> np.ndarray:
    """exp(log_weight) · erfc(z) without overflow for real z."""
    pos = z >= 0
    zp = np.where(pos, z, 0.0)
    return np.where(
        pos,
        erfcx(zp) * np.exp(log_weight - zp * zp),
        np.exp(log_weight) * erfc(np.where(pos, 0.0, z)),
    )


def _weighted_erfc_complex(z: np.ndarray, log_weight: np.ndarray) -> np.ndarray:
    """exp(log_weight) · erfc(z) = exp(log_weight − z²) w(iz) for Re z ≥ 0."""
    return np.exp(log_weight - z * z) * wofz(1j * z)


def _series_wavefunction(spec: StateSpec, x: np.ndarray, y: np.ndarray, terms: int = 4) -> np.ndarray:
    rows, cols, vals = _series(spec, terms)
    hx = hermite_functions(int(rows.max()) + 1, x.ravel())
    hy = hermite_functions(int(cols.max()) + 1, y.ravel())
    out = np.zeros(x.size)
    for r, c, v in zip(rows, cols, vals):
        out += v * hx[r] * hy[c]
    return out.reshape(x.shape)


def psi2_wavefunction(xi: float, x, y):
    """ψ(x, y) of psi_n(2, ξ) in closed form.

    0 < ξ < 1:  e^{(y²−x²)/2} [erf((y+x√ξ)/√(1−ξ)) − erf((y−x√ξ)/√(1−ξ))] / (2√(2 atanh ξ))
    −1 < ξ < 0: e^{(y²−x²)/2} Im erf((y + i x√−ξ)/√(1−ξ)) / √(−2 atanh ξ)
    The function is even in y; it is evaluated at |y|.
    """
    if not abs(xi) < 1:
        raise DomainError("psi_2 needs |xi| < 1")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if abs(xi) < SMALL_XI:
        out = _series_wavefunction(StateSpec.psi_n(2, xi), x, y)
        return float(out) if out.ndim == 0 else out
    ay = np.abs(y)
    sigma = sqrt(1.0 - xi)
    log_w = 0.5 * (ay * ay - x * x)
    if xi > 0:
        r = sqrt(xi)
        # erf(A) − erf(B) = erfc(B) − erfc(A)
        A = (ay + r * x) / sigma
        B = (ay - r * x) / sigma
        out = (_weighted_erfc(B, log_w) - _weighted_erfc(A, log_w)) / (2.0 * sqrt(2.0 * np.arctanh(xi)))
    else:
        z = (ay + 1j * sqrt(-xi) * x) / sigma
        # Im erf(z) = −Im erfc(z)
        out = -np.imag(_weighted_erfc_complex(z, log_w)) / sqrt(-2.0 * np.arctanh(xi))
    return float(out) if out.ndim == 0 else out


def psi2_prime_wavefunction(xi: float, x, y):
    """ψ(x, y) of psi2_prime(ξ) in closed form; odd in y, evaluated at |y|.

    0 < ξ < 1:  e^{(y²−x²)/2} [2erf(y) − erf((y−x√ξ)/√(1−ξ)) − erf((y+x√ξ)/√(1−ξ))] / (2√(−ln(1−ξ²)))
    −1 < ξ < 0: e^{(y²−x²)/2} (Re erf((y + i x√−ξ)/√(1−ξ)) − erf(y)) / √(−ln(1−ξ²))
    """
    if not abs(xi) < 1:
        raise DomainError("psi2_prime needs |xi| < 1")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if abs(xi) < SMALL_XI:
        out = _series_wavefunction(StateSpec.psi2_prime(xi), x, y)
        return float(out) if out.ndim == 0 else out
    parity = np.where(y < 0, -1.0, 1.0)
    ay = np.abs(y)
    sigma = sqrt(1.0 - xi)
    log_w = 0.5 * (ay * ay - x * x)
    norm = sqrt(-np.log1p(-xi * xi))
    ey = _weighted_erfc(ay, log_w)
    if xi > 0:
        r = sqrt(xi)
        A = (ay - r * x) / sigma
        B = (ay + r * x) / sigma
        # [erf(y) − erf(A)] + [erf(y) − erf(B)] = erfc(A) + erfc(B) − 2 erfc(y)
        bracket = _weighted_erfc(A, log_w) + _weighted_erfc(B, log_w) - 2.0 * ey
        out = parity * bracket / (2.0 * norm)
    else:
        z = (ay + 1j * sqrt(-xi) * x) / sigma
        # Re erf(z) − erf(y) = erfc(y) − Re erfc(z)
        out = parity * (ey - np.real(_weighted_erfc_complex(z, log_w))) / norm
    return float(out) if out.ndim == 0 else out


def series_wavefunction(spec: StateSpec, x, y, K: int = 300) -> np.ndarray:
    """Σ c_{kl} ψ_k(x) ψ_l(y) from the truncated coefficients."""
    C = coefficient_matrix(spec, K).tocoo()
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    hx = hermite_functions(C.shape[0], x.ravel())
    hy = hermite_functions(C.shape[1], y.ravel())
    out = np.zeros(x.size)
    for r, c, v in zip(C.row, C.col, C.data):
        out += v * hx[r] * hy[c]
    return out.reshape(x.shape)


def family_terms(spec: StateSpec, terms: int) -> Iterator[Tuple[int, int, float]]:
    """First ``terms`` (row, column, coefficient) entries of a series family."""
    rows, cols, vals = _series(spec, terms)
    return zip(rows.tolist(), cols.tolist(), vals.tolist())
