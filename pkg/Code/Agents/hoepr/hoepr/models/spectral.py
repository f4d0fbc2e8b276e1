from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel

from Code.Assets.Tools.linalg.eigensolvers import SolverId

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FockVector:
    """Single-mode coefficients c_0 … c_{N−1}."""
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients, dtype=float)
        if c.ndim != 1:
            raise ValueError("FockVector needs a 1-d coefficient array")
        if abs(np.linalg.norm(c) - 1.0) > _NORM_TOL:
            raise ValueError(f"FockVector not normalized (norm {np.linalg.norm(c):.15f})")
        object.__setattr__(self, "coefficients", c)

    @property
    def size(self) -> int:
        return len(self.coefficients)

    @classmethod
    def basis(cls, k: int, size: Optional[int] = None) -> "FockVector":
        c = np.zeros(size or k + 1)
        c[k] = 1.0
        return cls(c)


@dataclass(frozen=True)
class BipartiteFockVector:
    """Two-mode coefficients c_{kl} of Σ c_{kl}|k, l⟩; rows index mode a."""
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients)
        if c.ndim != 2:
            raise ValueError("BipartiteFockVector needs a 2-d coefficient array")
        if abs(np.linalg.norm(c) - 1.0) > _NORM_TOL:
            raise ValueError(f"BipartiteFockVector not normalized (norm {np.linalg.norm(c):.15f})")
        object.__setattr__(self, "coefficients", c)

    @property
    def shape(self):
        return self.coefficients.shape

    @classmethod
    def product(cls, a, b) -> "BipartiteFockVector":
        ca = np.asarray(a, dtype=float)
        cb = np.asarray(b, dtype=float)
        outer = np.outer(ca / np.linalg.norm(ca), cb / np.linalg.norm(cb))
        return cls(outer / np.linalg.norm(outer))


@dataclass(frozen=True)
class EigenResult:
    eigenvalue: float
    vector: Union[FockVector, BipartiteFockVector]
    truncation: int
    residual_norm: float
    solver_id: SolverId
    iterations: int = 0


class SweepPoint(BaseModel):
    N: int
    eigenvalue: float
    residual: float


class SweepReport(BaseModel):
    order: int
    points: List[SweepPoint]
    monotone: bool
    converged: bool
    converged_at: Optional[int] = None


class ScalingCheck(BaseModel):
    order: int
    per_mode: int
    bipartite_eigenvalue: float
    single_mode_eigenvalue: float
    ratio: float
    tol: float
    holds: bool


class MomentPair(BaseModel):
    x_moment: float
    p_moment: float


class GrowthReport(BaseModel):
    eigenvalues: Dict[int, float]
    ratios: List[Tuple[int, float]]
    ratios_increasing: bool
    doubling: List[Tuple[int, bool]]
