import logging

from Code.Assets.Tools.core.stage import Stage
from Knowledge.Schema.Artifacts.request import RunRequestArtifact
from Knowledge.Schema.Artifacts.spectral import EigenArtifact
from Code.Agents.hoepr.hoepr.agents.spectral import SpectralAgent, eigenstate_moments, truncation_sweep

logger = logging.getLogger(__name__)


class LambdaStage(Stage[RunRequestArtifact, EigenArtifact]):
    """Minimal eigenpair of x^{2n} + p^{2n} at the requested truncation."""

    def __init__(self, agent: SpectralAgent) -> None:
        super().__init__("lambda", RunRequestArtifact, EigenArtifact)
        self.agent = agent

    def run(self, inp: RunRequestArtifact, **kwargs) -> EigenArtifact:
        cfg = inp.config
        order = cfg.effective_order()
        N = cfg.effective_truncation()
        result = self.agent.run(order, N)

        sweep = None
        if cfg.sweep:
            sweep = truncation_sweep(order, cfg.sweep, cfg.tol, self.agent.solver, self.agent.tol, cfg.threads)
            if not sweep.monotone:
                logger.warning("spectral: sweep for order %d is not monotone in N", order)

        return EigenArtifact(
            order=order,
            N=result.truncation,
            lam=result.eigenvalue,
            residual=result.residual_norm,
            converged=result.residual_norm <= self.agent.tol,
            solver=result.solver_id,
            iterations=result.iterations,
            moments=eigenstate_moments(result, order),
            sweep=sweep,
            coefficients=result.vector.coefficients,
        )
