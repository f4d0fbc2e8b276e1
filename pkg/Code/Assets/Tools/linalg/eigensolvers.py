"""
Lowest eigenpair of truncated Fock operators.

Both solvers work with a factorization of M − σ, σ = 0 when M is positive definite
(every quadrature sum) and a Gershgorin lower bound otherwise. The upper edge of a
truncated x^{2n} + p^{2n} grows like N^n, so the inverse operator is the one whose
extremal eigenvalue separates well.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Literal, Tuple

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from Code.Assets.Tools.core.errors import MemoryGuardError, NonConvergenceError
from Code.Assets.Tools.fock.matrices import BandedFockMatrix, FockMatrix, SparseFockMatrix

logger = logging.getLogger(__name__)

SolverId = Literal["dense", "banded_iterative"]
Solve = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    vector: np.ndarray
    residual_norm: float
    iterations: int
    solver_id: SolverId
    shift: float = 0.0


def fix_sign(v: np.ndarray) -> np.ndarray:
    """First nonzero coefficient made positive."""
    scale = np.max(np.abs(v)) if v.size else 0.0
    if scale == 0.0:
        return v
    first = int(np.argmax(np.abs(v) > 1e-12 * scale))
    return -v if v[first] < 0 else v


def rayleigh_residual(matrix: FockMatrix, v: np.ndarray) -> Tuple[float, float]:
    mv = matrix.matvec(v)
    lam = float(v @ mv)
    return lam, float(np.linalg.norm(mv - lam * v))


def trial_value(matrix: FockMatrix, coefficients: np.ndarray) -> float:
    """Rayleigh quotient ⟨c|M|c⟩/⟨c|c⟩ of an arbitrary trial vector, zero-padded to size."""
    c = np.zeros(matrix.size)
    c[: len(coefficients)] = coefficients[: matrix.size]
    return float(c @ matrix.matvec(c) / (c @ c))


# ── factorizations ────────────────────────────────────────────────────────────

def _banded_solver(matrix: BandedFockMatrix) -> Tuple[Solve, float]:
    u = matrix.bandwidth
    ab = matrix.to_upper_banded()
    for shift in (0.0, min(matrix.gershgorin_lower() - 1.0, -1.0)):
        shifted = ab.copy()
        shifted[u] -= shift
        try:
            cb = sla.cholesky_banded(shifted, lower=False)
        except sla.LinAlgError:
            logger.debug("linalg: banded Cholesky failed at shift %g", shift)
            continue
        return (lambda b, cb=cb: sla.cho_solve_banded((cb, False), b)), shift
    raise NonConvergenceError("could not factor shifted band matrix")


def _sparse_solver(matrix: SparseFockMatrix) -> Tuple[Solve, float]:
    eye = sp.identity(matrix.size, format="csc")
    a = matrix.to_sparse().tocsc()
    for shift in (0.0, min(matrix.gershgorin_lower() - 1.0, -1.0)):
        # symmetric ordering with diagonal pivots: the U diagonal carries the inertia
        try:
            lu = spla.splu(
                (a - shift * eye).tocsc(),
                permc_spec="MMD_AT_PLUS_A",
                diag_pivot_thresh=0.0,
                options={"SymmetricMode": True},
            )
        except RuntimeError:
            continue
        if np.any(lu.U.diagonal() <= 0):
            continue
        return lu.solve, shift
    raise NonConvergenceError("could not factor shifted sparse matrix")


def _dense_solver(a: np.ndarray, matrix: FockMatrix) -> Tuple[Solve, float]:
    for shift in (0.0, min(matrix.gershgorin_lower() - 1.0, -1.0)):
        try:
            cf = sla.cho_factor(a - shift * np.eye(len(a)))
        except sla.LinAlgError:
            continue
        return (lambda b, cf=cf: sla.cho_solve(cf, b)), shift
    raise NonConvergenceError("could not factor shifted dense matrix")


# ── solvers ───────────────────────────────────────────────────────────────────

def dense_min_eigenpair(matrix: FockMatrix, tol: float, cap: int = 4000, refine_steps: int = 4) -> EigenPair:
    """LAPACK subset eigensolve followed by inverse-iteration polishing.

    The matrix is reversed before the Householder reduction so that its entries
    decrease towards the bottom-right corner; that keeps the small end of the
    spectrum accurate for strongly graded matrices.
    """
    if matrix.size > cap:
        raise MemoryGuardError(f"dense solver limited to N <= {cap}, got {matrix.size}")
    a = matrix.to_dense()
    _, vecs = sla.eigh(a[::-1, ::-1], subset_by_index=[0, 0], driver="evx")
    v = vecs[::-1, 0].copy()
    v /= np.linalg.norm(v)
    solve, shift = _dense_solver(a, matrix)
    lam, res = rayleigh_residual(matrix, v)
    steps = 0
    while res > tol and steps < refine_steps:
        y = solve(v)
        v = y / np.linalg.norm(y)
        lam, res = rayleigh_residual(matrix, v)
        steps += 1
    pair = EigenPair(lam, fix_sign(v), res, steps, "dense", shift)
    if res > tol:
        raise NonConvergenceError(f"dense solve residual {res:.3e} above tolerance {tol:.1e}", best=pair)
    return pair


def lanczos_min_eigenpair(matrix: FockMatrix, tol: float, max_iter: int = 400) -> EigenPair:
    """Lanczos with full reorthogonalization on (M − σ)⁻¹, σ = 0 when M > 0.

    The start vector is the constant vector pushed twice through the inverse, which
    gives it weight in every parity sector while suppressing the large-k tail.
    """
    if isinstance(matrix, BandedFockMatrix):
        solve, shift = _banded_solver(matrix)
    else:
        solve, shift = _sparse_solver(matrix)
    N = matrix.size
    steps = min(max_iter, N)
    Q = np.zeros((steps + 1, N))
    alpha = np.zeros(steps)
    beta = np.zeros(steps)

    q = solve(solve(np.full(N, 1.0 / np.sqrt(N))))
    Q[0] = q / np.linalg.norm(q)
    best = None
    for j in range(steps):
        w = solve(Q[j])
        alpha[j] = Q[j] @ w
        w -= alpha[j] * Q[j]
        if j:
            w -= beta[j - 1] * Q[j - 1]
        for _ in range(2):
            w -= Q[: j + 1].T @ (Q[: j + 1] @ w)
        beta[j] = np.linalg.norm(w)

        if j == 0:
            s = np.ones(1)
        else:
            _, s = sla.eigh_tridiagonal(alpha[: j + 1], beta[:j], select="i", select_range=(j, j))
            s = s[:, 0]
        y = Q[: j + 1].T @ s
        y /= np.linalg.norm(y)
        lam, res = rayleigh_residual(matrix, y)
        best = EigenPair(lam, fix_sign(y), res, j + 1, "banded_iterative", shift)
        if res <= tol:
            logger.debug("linalg: lanczos converged in %d steps, residual %.2e", j + 1, res)
            return best
        if beta[j] <= 1e-14 * max(abs(alpha[j]), 1e-300):
            break
        Q[j + 1] = w / beta[j]
    raise NonConvergenceError(
        f"lanczos stopped after {best.iterations if best else 0} steps with residual "
        f"{best.residual_norm if best else float('nan'):.3e} (tolerance {tol:.1e})",
        best=best,
    )


def min_eigenpair(matrix: FockMatrix, tol: float, solver: SolverId = "banded_iterative", dense_cap: int = 4000) -> EigenPair:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if solver == "dense":
        return dense_min_eigenpair(matrix, tol, cap=dense_cap)
    if solver == "banded_iterative":
        return lanczos_min_eigenpair(matrix, tol)
    raise ValueError(f"unknown solver {solver!r}")
