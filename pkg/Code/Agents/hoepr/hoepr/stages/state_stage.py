from typing import Any, Dict

import numpy as np
import pandas as pd

from Code.Assets.Tools.core.stage import Stage
from Knowledge.Schema.Artifacts.criterion import CriterionArtifact
from Knowledge.Schema.Artifacts.request import RunRequestArtifact
from Knowledge.Schema.threshold_registry import threshold_registry
from Code.Agents.hoepr.hoepr.agents import criteria
from Code.Agents.hoepr.hoepr.agents.gaussian import require_physical
from Code.Agents.hoepr.hoepr.models import CovarianceMatrix, CriterionId, RunConfig, StateSpec


def build_state(cfg: RunConfig) -> StateSpec:
    """StateSpec from CLI parameters; Gaussian covariances are checked for physicality here."""
    if cfg.family == "squeezed_vacuum":
        return StateSpec.squeezed_vacuum(cfg.lam)
    if cfg.family == "psi_n":
        return StateSpec.psi_n(cfg.n, cfg.xi)
    if cfg.family == "psi2_prime":
        return StateSpec.psi2_prime(cfg.xi)
    if cfg.family == "explicit":
        coefficients = pd.read_csv(cfg.coefficients_file, header=None).to_numpy(dtype=float)
        return StateSpec.explicit(coefficients / np.linalg.norm(coefficients))
    cov = CovarianceMatrix.from_flat(cfg.covariance, cfg.mean)
    return StateSpec.gaussian(require_physical(cov))


def describe_state(state: StateSpec) -> Dict[str, Any]:
    out: Dict[str, Any] = {"family": state.family}
    for name in ("lam", "n", "xi"):
        value = getattr(state, name)
        if value is not None:
            out[name] = value
    if state.vector is not None:
        out["shape"] = list(state.vector.shape)
    return out


class StateStage(Stage[RunRequestArtifact, CriterionArtifact]):
    """Evaluate one criterion on one state, optionally minimizing over the sign."""

    def __init__(self) -> None:
        super().__init__("state", RunRequestArtifact, CriterionArtifact)

    def run(self, inp: RunRequestArtifact, **kwargs) -> CriterionArtifact:
        cfg = inp.config
        state = build_state(cfg)
        order = cfg.effective_order()
        if cfg.best_sign:
            report = criteria.evaluate_best_sign(state, cfg.criterion, order, cfg.truncation)
        else:
            report = criteria.evaluate(state, CriterionId(kind=cfg.criterion, order=order, sign=cfg.sign), cfg.truncation)
        criterion = CriterionId(kind=report.criterion, order=report.order, sign=report.sign)
        return CriterionArtifact(
            state=describe_state(state),
            report=report,
            closed_form=criteria.closed_form(state, criterion),
            sources=[r.source for r in threshold_registry.records(criterion)],
        )
