from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from pydantic import BaseModel


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetrized second moments in the ordering (x_a, x_b, p_a, p_b); vacuum is diag(½, ½, ½, ½)."""
    sigma: np.ndarray
    mean: np.ndarray = field(default_factory=lambda: np.zeros(4))

    def __post_init__(self) -> None:
        s = np.asarray(self.sigma, dtype=float)
        m = np.asarray(self.mean, dtype=float)
        if s.shape != (4, 4) or m.shape != (4,):
            raise ValueError("covariance must be 4x4 with a 4-vector mean")
        if np.max(np.abs(s - s.T)) > 1e-12:
            raise ValueError("covariance matrix not symmetric")
        object.__setattr__(self, "sigma", 0.5 * (s + s.T))
        object.__setattr__(self, "mean", m)

    @classmethod
    def vacuum(cls) -> "CovarianceMatrix":
        return cls(0.5 * np.eye(4))

    @classmethod
    def from_flat(cls, values, mean=None) -> "CovarianceMatrix":
        return cls(np.asarray(values, dtype=float).reshape(4, 4), np.zeros(4) if mean is None else mean)

    def centered(self) -> "CovarianceMatrix":
        return CovarianceMatrix(self.sigma, np.zeros(4))


class FourthMoments(BaseModel):
    n_a2: float       # ⟨a†² a²⟩
    anti_b2: float    # ⟨b² b†²⟩
    cross_abs2: float  # |⟨a² b²⟩|²


class InequalityChain(BaseModel):
    sigma1: float
    sigma2: float
    u: float
    v: float
    A: float
    uv_holds: bool
    A_holds: bool


class ScanReport(BaseModel):
    samples: int
    seed: int
    order: int = 2
    min_value: float
    argmin_sigma: List[float]
    violations: int
    entangled_fraction: float
    bound: float
    tolerance: float = 1e-9
    note: Optional[str] = None
