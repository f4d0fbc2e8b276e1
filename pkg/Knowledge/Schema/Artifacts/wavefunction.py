from dataclasses import dataclass, field
from typing import Optional

import pandas as pd

from Code.Assets.Tools.core.artifact import Artifact
from Code.Agents.hoepr.hoepr.models import BesselGaussFit, DerivativeTable


@dataclass
class WavefunctionArtifact(Artifact):
    """Minimizer on a real-space grid, derivatives at the origin and the eigen-equation residual."""
    order: int = 2
    N: int = 0
    eigenvalue: float = 0.0
    norm: float = 0.0
    ode_residual: Optional[float] = None
    derivatives: Optional[DerivativeTable] = None
    grid: Optional[pd.DataFrame] = field(default=None, metadata={"export": False})


@dataclass
class FitArtifact(Artifact):
    """Bessel–Gauss approximant c J₀(a x²) e^{−b x²} of the minimizer."""
    order: int = 2
    N: int = 0
    eigenvalue: float = 0.0
    fit: Optional[BesselGaussFit] = None
    k_argument: float = 0.0
