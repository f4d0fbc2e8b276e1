"""
Truncated Fock-basis matrices.

Single-mode operators are stored as symmetric band matrices (upper diagonals only);
two-mode operators as scipy sparse matrices on the product basis |k, l⟩ ↦ k·N + l.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from Code.Assets.Tools.core.errors import MemoryGuardError
from .operators import OperatorPolynomial, ladder_power


def monomial_elements(p: int, q: int, k: np.ndarray) -> np.ndarray:
    """⟨k−q+p| a†^p a^q |k⟩ = √(k!(k−q+p)!)/(k−q)!, built from square-root products.

    Entries with k < q vanish.
    """
    k = np.asarray(k, dtype=float)
    out = np.ones_like(k)
    for t in range(q):
        out *= np.sqrt(np.clip(k - t, 0.0, None))
    base = k - q
    for t in range(1, p + 1):
        out *= np.sqrt(np.clip(base + t, 0.0, None))
    out[k < q] = 0.0
    return out


def polynomial_diagonals(poly: OperatorPolynomial, N: int) -> Dict[int, np.ndarray]:
    """Nonzero diagonals keyed by scipy offset d = column − row = q − p.

    For d ≥ 0 the array is indexed by row, for d < 0 by column (scipy.sparse.diags layout).
    """
    diags: Dict[int, np.ndarray] = {}
    for (p, q), c in poly.items():
        d = q - p
        if abs(d) >= N:
            continue
        cols = np.arange(d, N) if d >= 0 else np.arange(0, N + d)
        vals = float(c) * monomial_elements(p, q, cols)
        if d in diags:
            diags[d] = diags[d] + vals
        else:
            diags[d] = vals
    return {d: v for d, v in diags.items() if np.any(v)}


@dataclass(frozen=True)
class BandedFockMatrix:
    """Real symmetric N×N matrix held as upper diagonals at the given offsets."""
    size: int
    band_offsets: Tuple[int, ...]
    bands: Tuple[np.ndarray, ...]
    order_tag: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.band_offsets) != len(self.bands):
            raise ValueError("one band per offset required")
        for d, band in zip(self.band_offsets, self.bands):
            if d < 0 or len(band) != self.size - d:
                raise ValueError(f"band at offset {d} has length {len(band)}, expected {self.size - d}")
            if not np.all(np.isfinite(band)):
                raise ValueError(f"non-finite entries at offset {d}")

    @property
    def bandwidth(self) -> int:
        return max(self.band_offsets, default=0)

    def band(self, offset: int) -> np.ndarray:
        return self.bands[self.band_offsets.index(offset)]

    def diagonal(self) -> np.ndarray:
        if 0 in self.band_offsets:
            return self.band(0)
        return np.zeros(self.size)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.result_type(v, float))
        for d, band in zip(self.band_offsets, self.bands):
            if d == 0:
                out += band * v
            else:
                out[:-d] += band * v[d:]
                out[d:] += band * v[:-d]
        return out

    def to_sparse(self) -> sp.csr_matrix:
        offsets, data = [], []
        for d, band in zip(self.band_offsets, self.bands):
            offsets.append(d)
            data.append(band)
            if d:
                offsets.append(-d)
                data.append(band)
        return sp.diags(data, offsets, shape=(self.size, self.size), format="csr")

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def to_upper_banded(self) -> np.ndarray:
        """Layout for scipy.linalg.cholesky_banded: ab[u + i − j, j] = a[i, j]."""
        u = self.bandwidth
        ab = np.zeros((u + 1, self.size))
        for d, band in zip(self.band_offsets, self.bands):
            ab[u - d, d:] = band
        return ab

    def gershgorin_lower(self) -> float:
        radius = np.zeros(self.size)
        for d, band in zip(self.band_offsets, self.bands):
            if d:
                radius[:-d] += np.abs(band)
                radius[d:] += np.abs(band)
        return float(np.min(self.diagonal() - radius))


@dataclass(frozen=True)
class SparseFockMatrix:
    """Real symmetric operator on the two-mode product basis, N_per_mode² rows."""
    matrix: sp.csr_matrix
    per_mode: int
    order_tag: Optional[int] = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def to_sparse(self) -> sp.csr_matrix:
        return self.matrix

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def gershgorin_lower(self) -> float:
        absm = abs(self.matrix)
        diag = self.matrix.diagonal()
        radius = np.asarray(absm.sum(axis=1)).ravel() - np.abs(diag)
        return float(np.min(diag - radius))


FockMatrix = BandedFockMatrix | SparseFockMatrix


def to_fock_matrix(poly: OperatorPolynomial, truncation: int, order_tag: Optional[int] = None) -> BandedFockMatrix:
    if truncation < 1:
        raise ValueError(f"truncation must be >= 1, got {truncation}")
    if not poly.is_hermitian():
        raise ValueError("operator polynomial is not Hermitian")
    diags = polynomial_diagonals(poly, truncation)
    offsets = tuple(sorted(d for d in diags if d >= 0))
    if 0 not in offsets:
        offsets = (0,) + offsets
        diags[0] = np.zeros(truncation)
    return BandedFockMatrix(
        size=truncation,
        band_offsets=offsets,
        bands=tuple(diags[d] for d in offsets),
        order_tag=order_tag,
    )


def ladder_power_matrix(sign: int, power: int, truncation: int) -> sp.csr_matrix:
    """Projection of (a + s a†)^power onto the first N Fock states (not symmetric for s = −1, odd power)."""
    diags = polynomial_diagonals(ladder_power(sign, power), truncation)
    if not diags:
        return sp.csr_matrix((truncation, truncation))
    offsets = sorted(diags)
    return sp.diags([diags[d] for d in offsets], offsets, shape=(truncation, truncation), format="csr")


def bipartite_quadrature_matrix(
    order: int,
    sign: int,
    per_mode: int,
    max_dim: int,
    p_sign: Optional[int] = None,
) -> SparseFockMatrix:
    """⟨(x_a ± x_b)^{2n} + (p_a ± p_b)^{2n}⟩ on the N² product basis; ``p_sign`` defaults to ``sign``.

    (x_a + s x_b)^{2n} = 2^{−n} Σ_j C(2n, j) s^{2n−j} X_j ⊗ X_{2n−j},  X_j = (a + a†)^j
    (p_a + s p_b)^{2n} = (−1)^n 2^{−n} Σ_j C(2n, j) s^{2n−j} Q_j ⊗ Q_{2n−j},  Q_j = (a − a†)^j
    """
    n = order // 2
    dim = per_mode * per_mode
    if dim > max_dim:
        raise MemoryGuardError(f"product basis of {dim} states exceeds cap {max_dim}")
    X = [ladder_power_matrix(1, j, per_mode) for j in range(order + 1)]
    Q = [ladder_power_matrix(-1, j, per_mode) for j in range(order + 1)]
    t = sign if p_sign is None else p_sign
    total = sp.csr_matrix((dim, dim))
    for j in range(order + 1):
        w = comb(order, j) * sign ** (order - j) / 2 ** n
        total = total + w * sp.kron(X[j], X[order - j], format="csr")
        wp = comb(order, j) * t ** (order - j) / 2 ** n
        total = total + wp * (-1) ** n * sp.kron(Q[j], Q[order - j], format="csr")
    total = ((total + total.T) * 0.5).tocsr()
    total.eliminate_zeros()
    return SparseFockMatrix(matrix=total, per_mode=per_mode, order_tag=order)
