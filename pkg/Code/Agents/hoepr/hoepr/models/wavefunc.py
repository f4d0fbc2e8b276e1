from typing import List

from pydantic import BaseModel, Field


class BesselGaussFit(BaseModel):
    """ψ(x) ≈ c J₀(a x²) e^{−b x²} with max relative deviation ``max_rel_error`` on the fit grid."""
    a: float = Field(ge=0)
    b: float = Field(gt=0)
    c: float = Field(gt=0)
    max_rel_error: float
    evaluations: int = 0


class DerivativeTable(BaseModel):
    order: int
    eigenvalue: float
    derivatives: List[float]
