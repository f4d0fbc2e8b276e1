from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from .gaussian import CovarianceMatrix
from .spectral import BipartiteFockVector

Family = Literal["squeezed_vacuum", "psi_n", "psi2_prime", "explicit", "gaussian"]


class StateSpec(BaseModel):
    """One analytic family with its parameters, an explicit coefficient matrix or a Gaussian covariance."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    family: Family
    lam: Optional[float] = None
    n: Optional[int] = None
    xi: Optional[float] = None
    vector: Optional[BipartiteFockVector] = None
    covariance: Optional[CovarianceMatrix] = None

    @model_validator(mode="after")
    def _check(self):
        f = self.family
        if f == "squeezed_vacuum":
            if self.lam is None or not abs(self.lam) < 1:
                raise ValueError("squeezed_vacuum needs |lam| < 1")
        elif f == "psi_n":
            if self.n is None or self.n < 2 or self.xi is None:
                raise ValueError("psi_n needs n >= 2 and xi")
            limit_ok = abs(self.xi) < 1 if self.n == 2 else abs(self.xi) <= 1
            if not limit_ok:
                raise ValueError("psi_n needs |xi| < 1 for n = 2 and |xi| <= 1 for n >= 3")
        elif f == "psi2_prime":
            if self.xi is None or not abs(self.xi) < 1:
                raise ValueError("psi2_prime needs |xi| < 1")
        elif f == "explicit":
            if self.vector is None:
                raise ValueError("explicit family needs a coefficient matrix")
        elif f == "gaussian":
            if self.covariance is None:
                raise ValueError("gaussian family needs a covariance matrix")
        return self

    @classmethod
    def squeezed_vacuum(cls, lam: float) -> "StateSpec":
        return cls(family="squeezed_vacuum", lam=lam)

    @classmethod
    def psi_n(cls, n: int, xi: float) -> "StateSpec":
        return cls(family="psi_n", n=n, xi=xi)

    @classmethod
    def psi2_prime(cls, xi: float) -> "StateSpec":
        return cls(family="psi2_prime", xi=xi)

    @classmethod
    def explicit(cls, coefficients) -> "StateSpec":
        return cls(family="explicit", vector=BipartiteFockVector(np.asarray(coefficients)))

    @classmethod
    def gaussian(cls, covariance: CovarianceMatrix) -> "StateSpec":
        return cls(family="gaussian", covariance=covariance)
