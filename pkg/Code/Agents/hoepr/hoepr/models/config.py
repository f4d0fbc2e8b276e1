from typing import Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from .criteria import CriterionKind, Sign
from .states import Family

Command = Literal["lambda", "bipartite", "wavefunction", "fit", "state", "gaussian-scan", "hierarchy", "thresholds"]
OutputFormat = Literal["json", "csv"]
Solver = Literal["dense", "banded_iterative"]

SPECTRAL_COMMANDS = ("lambda", "bipartite", "wavefunction", "fit")
BIPARTITE_TRUNCATION = 40


def default_truncation(order: int) -> int:
    """2000 basis states up to order 8, 4000 beyond."""
    return 2000 if order <= 8 else 4000


class RunConfig(BaseModel):
    """One CLI invocation.

    ``order`` is 2n for the quadrature commands and for duan_higher, and n for the
    power criterion and the Gaussian scan. Unset values resolve per command and
    are echoed back in every output.
    """
    command: Command
    order: Optional[int] = None
    truncation: Optional[int] = Field(None, ge=1)
    tol: float = Field(1e-10, gt=0)
    seed: int = 42
    output_format: OutputFormat = "json"
    grid: Tuple[float, float, float] = (-6.0, 6.0, 0.01)
    solver: Solver = "banded_iterative"
    threads: int = Field(1, ge=1)
    sweep: Optional[Tuple[int, ...]] = None

    sign: Sign = "plus"
    samples: int = Field(10_000, ge=1)
    derivs: int = Field(0, ge=0)

    family: Optional[Family] = None
    lam: Optional[float] = None
    n: Optional[int] = None
    xi: Optional[float] = None
    criterion: CriterionKind = "power"
    best_sign: bool = False
    covariance: Optional[Tuple[float, ...]] = None
    mean: Optional[Tuple[float, float, float, float]] = None
    coefficients_file: Optional[str] = None

    @model_validator(mode="after")
    def _per_command(self):
        c = self.command
        order = self.effective_order()
        if c in SPECTRAL_COMMANDS:
            if order < 2 or order % 2:
                raise ValueError(f"--order must be an even integer >= 2, got {order}")
        if c == "bipartite" and self.truncation is not None and self.truncation < 2:
            raise ValueError("bipartite truncation per mode must be >= 2")
        if c == "wavefunction":
            lo, hi, step = self.grid
            if not (lo < hi and step > 0):
                raise ValueError("grid needs min < max and step > 0")
            if self.derivs > order - 2:
                raise ValueError(f"derivatives above order {order - 2} are not computed from coefficients")
        if c == "lambda" and self.sweep is not None:
            if any(b <= a for a, b in zip(self.sweep, self.sweep[1:])) or min(self.sweep) < 1:
                raise ValueError("--sweep needs a strictly increasing list of positive truncations")
        if c == "state":
            if self.family is None:
                raise ValueError("state needs --family")
            if self.family == "gaussian" and (self.covariance is None or len(self.covariance) != 16):
                raise ValueError("gaussian family needs 16 covariance entries")
            if self.family == "explicit" and not self.coefficients_file:
                raise ValueError("explicit family needs --coefficients")
            if self.criterion == "dbS" and order != 2:
                raise ValueError("dbS is defined for order 2 only")
        if c == "gaussian-scan" and order < 1:
            raise ValueError(f"scan order must be >= 1, got {order}")
        return self

    def effective_order(self) -> int:
        if self.order is not None:
            return self.order
        return 4 if self.command in SPECTRAL_COMMANDS else 2

    def effective_truncation(self) -> int:
        if self.truncation is not None:
            return self.truncation
        if self.command == "bipartite":
            return BIPARTITE_TRUNCATION
        return default_truncation(self.effective_order())

    def echo(self) -> dict:
        """Effective settings as printed in the ``config`` block of the output."""
        out = self.model_dump(exclude_none=True)
        out["order"] = self.effective_order()
        if self.command in SPECTRAL_COMMANDS:
            out["truncation"] = self.effective_truncation()
        return out
