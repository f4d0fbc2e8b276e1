from typing import List, Literal, Optional

from pydantic import BaseModel, model_validator

CriterionKind = Literal["duan_higher", "power", "dbS"]
Sign = Literal["plus", "minus"]
Provenance = Literal["analytic", "numeric_table", "vacuum"]
Verdict = Literal["entangled", "inconclusive"]


class CriterionId(BaseModel, frozen=True):
    """duan_higher(2n, ±): ⟨(x_a ± x_b)^{2n} + (p_a ∓ p_b)^{2n}⟩
    power(n, ±):       ⟨(a†ⁿ ± bⁿ)(aⁿ ± b†ⁿ)⟩
    dbS(±):            the n = 2 power form on mean-subtracted operators
    """
    kind: CriterionKind
    order: int = 2
    sign: Sign = "plus"

    @model_validator(mode="after")
    def _check_order(self):
        if self.kind == "duan_higher" and (self.order < 2 or self.order % 2):
            raise ValueError(f"duan_higher needs an even order >= 2, got {self.order}")
        if self.kind == "power" and self.order < 1:
            raise ValueError(f"power needs n >= 1, got {self.order}")
        if self.kind == "dbS" and self.order != 2:
            raise ValueError("dbS is defined for order 2 only")
        return self

    @property
    def label(self) -> str:
        if self.kind == "dbS":
            return f"dbS({self.sign})"
        return f"{self.kind}({self.order}, {self.sign})"

    @property
    def sign_value(self) -> int:
        return 1 if self.sign == "plus" else -1


class ThresholdStep(BaseModel):
    value: float
    provenance: Provenance
    note: str


class ThresholdEntry(BaseModel):
    value: float
    provenance: Provenance
    chain: List[ThresholdStep] = []


class CriterionReport(BaseModel):
    criterion: CriterionKind
    order: int
    sign: Sign
    value: float
    threshold: float
    provenance: Provenance
    verdict: Verdict
    margin: float
    truncation: Optional[int] = None
    strict_value: Optional[float] = None


class HierarchyRow(BaseModel):
    lower_order: int
    upper_order: int
    lower_value: float
    upper_value: float
    bound: float
    holds: bool


class HierarchyReport(BaseModel):
    rows: List[HierarchyRow]
    holds: bool
