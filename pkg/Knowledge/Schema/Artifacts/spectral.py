from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from Code.Assets.Tools.core.artifact import Artifact
from Code.Agents.hoepr.hoepr.models import MomentPair, ScalingCheck, SweepReport


@dataclass
class EigenArtifact(Artifact):
    """Minimal eigenpair of the truncated single-mode x^{2n} + p^{2n}."""
    order: int = 2
    N: int = 0
    lam: float = field(default=0.0, metadata={"key": "lambda"})
    residual: float = 0.0
    converged: bool = False
    solver: str = "banded_iterative"
    iterations: int = 0
    moments: Optional[MomentPair] = None
    sweep: Optional[SweepReport] = None
    coefficients: Optional[np.ndarray] = field(default=None, metadata={"export": False})


@dataclass
class BipartiteArtifact(Artifact):
    """Minimal eigenvalue of the two-mode quadrature sum and the scaling check against 2ⁿλ."""
    order: int = 2
    sign: str = "plus"
    N_per_mode: int = 0
    Lambda: float = 0.0
    residual: float = 0.0
    scaling: Optional[ScalingCheck] = None
    schmidt_head: List[float] = field(default_factory=list)
    entropy: float = 0.0
    coefficients: Optional[np.ndarray] = field(default=None, metadata={"export": False})
