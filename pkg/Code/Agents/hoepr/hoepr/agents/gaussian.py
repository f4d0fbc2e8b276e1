"""
Two-mode Gaussian states: physicality, local phase normalization, fourth and
higher ladder moments, and the randomized scan of the power criterion.

Quadrature ordering (x_a, x_b, p_a, p_b); vacuum covariance is diag(½, ½, ½, ½).
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from math import comb, factorial, sqrt
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from Code.Assets.Tools.core.errors import DomainError, InvalidOrderError, UnphysicalCovarianceError
from Code.Agents.hoepr.hoepr.models import (
    CovarianceMatrix,
    FourthMoments,
    InequalityChain,
    ScanReport,
    Sign,
)

logger = logging.getLogger(__name__)

PHYSICAL_TOL = 1e-10
NORMALIZED_TOL = 1e-10
SCAN_TOL = 1e-9

Seed = Union[int, np.random.SeedSequence, None]

# symplectic form for (x_a, x_b, p_a, p_b): [x_j, p_j] = i
OMEGA = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)

_R = 1.0 / sqrt(2.0)
# rows: a, a†, b, b† as combinations of (x_a, x_b, p_a, p_b)
LADDER = np.array(
    [
        [_R, 0.0, 1j * _R, 0.0],
        [_R, 0.0, -1j * _R, 0.0],
        [0.0, _R, 0.0, 1j * _R],
        [0.0, _R, 0.0, -1j * _R],
    ]
)
A, AD, B, BD = range(4)


def _sign_value(sign: Sign) -> int:
    return 1 if sign == "plus" else -1


# ── physicality ─────────────────────────────────────────────────────────────

def min_uncertainty_eigenvalue(cov: CovarianceMatrix) -> float:
    """Smallest eigenvalue of the Hermitian matrix σ + (i/2)Ω."""
    return float(np.linalg.eigvalsh(cov.sigma + 0.5j * OMEGA)[0])


def physicality(cov: CovarianceMatrix) -> bool:
    return min_uncertainty_eigenvalue(cov) >= -PHYSICAL_TOL


def require_physical(cov: CovarianceMatrix) -> CovarianceMatrix:
    low = min_uncertainty_eigenvalue(cov)
    if low < -PHYSICAL_TOL:
        raise UnphysicalCovarianceError(f"covariance violates the uncertainty condition (min eigenvalue {low:.3e})", low)
    return cov


# ── symplectic building blocks ─────────────────────────────────────────────

def local_rotation(phi_a: float, phi_b: float) -> np.ndarray:
    """x′ = cos φ x + sin φ p, p′ = −sin φ x + cos φ p on each mode."""
    S = np.zeros((4, 4))
    for (ix, ip), phi in (((0, 2), phi_a), ((1, 3), phi_b)):
        c, s = np.cos(phi), np.sin(phi)
        S[ix, ix], S[ix, ip] = c, s
        S[ip, ix], S[ip, ip] = -s, c
    return S


def local_squeeze(t_a: float, t_b: float) -> np.ndarray:
    return np.diag([np.exp(-t_a), np.exp(-t_b), np.exp(t_a), np.exp(t_b)])


def two_mode_squeezer(r: float) -> np.ndarray:
    ch, sh = np.cosh(r), np.sinh(r)
    return np.array(
        [
            [ch, sh, 0.0, 0.0],
            [sh, ch, 0.0, 0.0],
            [0.0, 0.0, ch, -sh],
            [0.0, 0.0, -sh, ch],
        ]
    )


def transform(cov: CovarianceMatrix, S: np.ndarray) -> CovarianceMatrix:
    return CovarianceMatrix(S @ cov.sigma @ S.T, S @ cov.mean)


def two_mode_squeezed(r: float) -> CovarianceMatrix:
    """Covariance of √(1−λ²) Σ λᵏ|k, k⟩ with λ = tanh r."""
    return transform(CovarianceMatrix.vacuum(), two_mode_squeezer(r))


def random_physical_covariance(seed: Seed = None, max_tries: int = 100) -> CovarianceMatrix:
    """Thermal modes dressed by local squeezers, a two-mode squeezer and local
    rotations, plus a small symmetric perturbation, rejection-filtered for physicality.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        nu = 0.5 + rng.exponential(0.3, size=2)
        thermal = CovarianceMatrix(np.diag([nu[0], nu[1], nu[0], nu[1]]))
        S = (
            local_rotation(*rng.uniform(0, 2 * np.pi, size=2))
            @ two_mode_squeezer(rng.uniform(0.0, 1.2))
            @ local_squeeze(*rng.normal(0.0, 0.3, size=2))
            @ local_rotation(*rng.uniform(0, 2 * np.pi, size=2))
        )
        sigma = S @ thermal.sigma @ S.T
        noise = rng.normal(0.0, 0.05, size=(4, 4))
        sigma = sigma + 0.5 * (noise + noise.T)
        cov = CovarianceMatrix(sigma, rng.normal(0.0, 1.0, size=4))
        if physicality(cov):
            return cov
    raise RuntimeError(f"no physical covariance after {max_tries} draws")


# ── phase normalization ────────────────────────────────────────────────────

def _equalizing_angle(sigma: np.ndarray, ix: int, ip: int) -> float:
    # σ′_xx − σ′_pp = 2(d cos 2φ + c sin 2φ)
    d = 0.5 * (sigma[ix, ix] - sigma[ip, ip])
    c = sigma[ix, ip]
    if abs(d) <= NORMALIZED_TOL:
        return 0.0
    if abs(c) <= NORMALIZED_TOL:
        return np.pi / 4
    return 0.5 * np.arctan(-d / c)


def phase_normalize(cov: CovarianceMatrix) -> Tuple[CovarianceMatrix, float, float]:
    """Local rotations making σ′₁₁ = σ′₃₃ and σ′₂₂ = σ′₄₄."""
    phi_a = _equalizing_angle(cov.sigma, 0, 2)
    phi_b = _equalizing_angle(cov.sigma, 1, 3)
    if phi_a == 0.0 and phi_b == 0.0:
        return cov, 0.0, 0.0
    return transform(cov, local_rotation(phi_a, phi_b)), phi_a, phi_b


def is_phase_normalized(cov: CovarianceMatrix, tol: float = NORMALIZED_TOL) -> bool:
    s = cov.sigma
    return abs(s[0, 0] - s[2, 2]) <= tol and abs(s[1, 1] - s[3, 3]) <= tol


# ── moments ────────────────────────────────────────────────────────────────

def fourth_moments_closed(cov: CovarianceMatrix) -> FourthMoments:
    """Closed forms on a phase-normalized, mean-free covariance."""
    if not is_phase_normalized(cov):
        raise DomainError("fourth_moments_closed needs a phase-normalized covariance")
    s = cov.sigma
    s1, s2 = s[0, 0], s[1, 1]
    s13, s24 = s[0, 2], s[1, 3]
    u = s[0, 1] - s[2, 3]
    v = s[0, 3] + s[1, 2]
    uv2 = u * u + v * v
    return FourthMoments(
        n_a2=2 * s1 * s1 - 2 * s1 + s13 * s13 + 0.5,
        anti_b2=2 * s2 * s2 + 2 * s2 + s24 * s24 + 0.5,
        cross_abs2=0.25 * (uv2 * uv2 - 4 * s13 * s24 * (u * u - v * v) + 4 * s13 * s13 * s24 * s24),
    )


def pair_matrix(cov: CovarianceMatrix) -> np.ndarray:
    """Ordered connected two-point functions ⟨δo_i δo_j⟩ for o = (a, a†, b, b†)."""
    G = cov.sigma + 0.5j * OMEGA
    return LADDER @ G @ LADDER.T


def ladder_means(cov: CovarianceMatrix) -> np.ndarray:
    return LADDER @ cov.mean


def wick_moment(ops: Sequence[int], cov: CovarianceMatrix, centered: bool = True) -> complex:
    """⟨o_{i1} o_{i2} …⟩ of the Gaussian state as a sum over ordered (partial) pairings."""
    P = pair_matrix(cov)
    mu = np.zeros(4, dtype=complex) if centered else ladder_means(cov)
    return _ordered_moment(tuple(ops), P, mu)


def _ordered_moment(ops: Tuple[int, ...], P: np.ndarray, mu: np.ndarray) -> complex:
    @lru_cache(maxsize=None)
    def go(rest: Tuple[int, ...]) -> complex:
        if not rest:
            return 1.0 + 0j
        first, tail = rest[0], rest[1:]
        total = mu[first] * go(tail) if mu[first] != 0 else 0j
        for j, other in enumerate(tail):
            total += P[first, other] * go(tail[:j] + tail[j + 1 :])
        return total

    return go(ops)


def wick_fourth_moments(cov: CovarianceMatrix) -> FourthMoments:
    c = cov.centered()
    return FourthMoments(
        n_a2=float(np.real(wick_moment((AD, AD, A, A), c))),
        anti_b2=float(np.real(wick_moment((B, B, BD, BD), c))),
        cross_abs2=float(abs(wick_moment((A, A, B, B), c)) ** 2),
    )


def gaussian_power_moments(cov: CovarianceMatrix, n: int, centered: bool = True) -> Tuple[float, float, complex]:
    """(⟨a†ⁿaⁿ⟩, ⟨bⁿb†ⁿ⟩, ⟨aⁿbⁿ⟩); ``centered`` measures a − ⟨a⟩ and b − ⟨b⟩."""
    if n < 1:
        raise InvalidOrderError(f"n must be >= 1, got {n}")
    return (
        float(np.real(wick_moment((AD,) * n + (A,) * n, cov, centered))),
        float(np.real(wick_moment((B,) * n + (BD,) * n, cov, centered))),
        complex(wick_moment((A,) * n + (B,) * n, cov, centered)),
    )


def power_value(cov: CovarianceMatrix, n: int, sign: Sign, centered: bool = False) -> Tuple[float, float]:
    """(⟨(a†ⁿ ± bⁿ)(aⁿ ± b†ⁿ)⟩, ⟨a†ⁿaⁿ⟩ + ⟨bⁿb†ⁿ⟩ − 2|⟨aⁿbⁿ⟩|)."""
    require_physical(cov)
    n_a, anti_b, cross = gaussian_power_moments(cov, n, centered)
    return n_a + anti_b + 2 * _sign_value(sign) * cross.real, n_a + anti_b - 2 * abs(cross)


def criterion_dbS(cov: CovarianceMatrix, sign: Sign) -> Tuple[float, float]:
    """Mean-subtracted second-power criterion and its sign-free lower form."""
    return power_value(cov, 2, sign, centered=True)


def _gaussian_even_moment(mean: float, var: float, order: int) -> float:
    """E[X^order] for X ~ N(mean, var)."""
    total = 0.0
    double_fact = 1.0
    for k in range(order // 2 + 1):
        if k:
            double_fact *= 2 * k - 1
        total += comb(order, 2 * k) * mean ** (order - 2 * k) * var**k * double_fact
    return total


def duan_higher_value(cov: CovarianceMatrix, order: int, sign: Sign) -> float:
    """⟨(x_a ± x_b)^{2n} + (p_a ∓ p_b)^{2n}⟩; a single quadrature combination is Gaussian distributed."""
    if order < 2 or order % 2:
        raise InvalidOrderError(f"order must be an even integer >= 2, got {order}")
    require_physical(cov)
    s = _sign_value(sign)
    sig, m = cov.sigma, cov.mean
    vx = sig[0, 0] + sig[1, 1] + 2 * s * sig[0, 1]
    vp = sig[2, 2] + sig[3, 3] - 2 * s * sig[2, 3]
    return _gaussian_even_moment(m[0] + s * m[1], vx, order) + _gaussian_even_moment(m[2] - s * m[3], vp, order)


def inequality_chain(cov: CovarianceMatrix) -> InequalityChain:
    if not is_phase_normalized(cov):
        raise DomainError("inequality_chain needs a phase-normalized covariance")
    s = cov.sigma
    s1, s2 = s[0, 0], s[1, 1]
    u = s[0, 1] - s[2, 3]
    v = s[0, 3] + s[1, 2]
    big_a = 2 * s1 * s1 - 2 * s1 + 2 * s2 * s2 + 2 * s2 - 1
    return InequalityChain(
        sigma1=s1,
        sigma2=s2,
        u=u,
        v=v,
        A=big_a,
        uv_holds=4 * s1 * s2 - 1 >= u * u + v * v - PHYSICAL_TOL,
        A_holds=big_a >= 4 * s1 * s2 - 2 * abs(s1 - s2) - 1 - PHYSICAL_TOL,
    )


# ── scan ──────────────────────────────────────────────────────────────────

def strict_power_value(cov: CovarianceMatrix, n: int = 2) -> float:
    """min over signs of the mean-subtracted power criterion, ⟨a†ⁿaⁿ⟩ + ⟨bⁿb†ⁿ⟩ − 2|⟨aⁿbⁿ⟩|."""
    if n == 2:
        m = fourth_moments_closed(phase_normalize(cov.centered())[0])
        return m.n_a2 + m.anti_b2 - 2 * sqrt(max(m.cross_abs2, 0.0))
    n_a, anti_b, cross = gaussian_power_moments(cov, n, centered=True)
    return n_a + anti_b - 2 * abs(cross)


def duan_entangled(cov: CovarianceMatrix) -> bool:
    return min(duan_higher_value(cov.centered(), 2, s) for s in ("plus", "minus")) < 2.0 - 1e-12


def _scan_one(cov: CovarianceMatrix, n: int) -> Tuple[float, bool]:
    return strict_power_value(cov, n), duan_entangled(cov)


def power_criterion_scan(
    samples: int,
    seed: int,
    order: int = 2,
    threads: int = 1,
    covariances: Optional[Iterable[CovarianceMatrix]] = None,
) -> ScanReport:
    """Minimum of the strict power criterion over random physical covariances.

    Sample 0 is the vacuum, where the bound n! is attained; the rest are drawn from
    per-sample children of ``SeedSequence(seed)``, so results do not depend on ``threads``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if order < 1:
        raise InvalidOrderError(f"power order must be >= 1, got {order}")
    if covariances is None:
        children = np.random.SeedSequence(seed).spawn(samples - 1)
        draws: List[CovarianceMatrix] = [CovarianceMatrix.vacuum()]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            draws += list(pool.map(random_physical_covariance, children))
    else:
        draws = list(covariances)[:samples]
        for cov in draws:
            require_physical(cov)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda c: _scan_one(c, order), draws))

    values = np.array([r[0] for r in results])
    entangled = sum(r[1] for r in results)
    bound = float(factorial(order))
    best = int(np.argmin(values))
    violations = int(np.sum(values < bound - SCAN_TOL))
    logger.info(
        "gaussian: scanned %d covariances, min=%.12f, violations=%d, duan-entangled=%d",
        len(draws), values[best], violations, entangled,
    )
    return ScanReport(
        samples=len(draws),
        seed=seed,
        order=order,
        min_value=float(values[best]),
        argmin_sigma=[float(v) for v in draws[best].sigma.ravel()],
        violations=violations,
        entangled_fraction=entangled / len(draws),
        bound=bound,
        tolerance=SCAN_TOL,
        note=None if order == 2 else "orders above 2 are scanned numerically; no proof is implied",
    )
