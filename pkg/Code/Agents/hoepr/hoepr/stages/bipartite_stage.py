from Code.Assets.Tools.core.stage import Stage
from Knowledge.Schema.Artifacts.request import RunRequestArtifact
from Knowledge.Schema.Artifacts.spectral import BipartiteArtifact
from Code.Agents.hoepr.hoepr.agents.spectral import (
    SCALING_TOL,
    SpectralAgent,
    entanglement_entropy,
    schmidt_spectrum,
    scaling_identity_report,
)

SCHMIDT_HEAD = 5


class BipartiteStage(Stage[RunRequestArtifact, BipartiteArtifact]):
    def __init__(self, agent: SpectralAgent) -> None:
        super().__init__("bipartite", RunRequestArtifact, BipartiteArtifact)
        self.agent = agent

    def run(self, inp: RunRequestArtifact, **kwargs) -> BipartiteArtifact:
        cfg = inp.config
        order = cfg.effective_order()
        per_mode = cfg.effective_truncation()
        big = self.agent.bipartite(order, cfg.sign, per_mode)
        single = self.agent.run(order)
        scaling = scaling_identity_report(
            order,
            per_mode,
            SCALING_TOL,
            sign=cfg.sign,
            single_mode=single,
            bipartite_result=big,
        )
        spectrum = schmidt_spectrum(big.vector)
        return BipartiteArtifact(
            order=order,
            sign=cfg.sign,
            N_per_mode=per_mode,
            Lambda=big.eigenvalue,
            residual=big.residual_norm,
            scaling=scaling,
            schmidt_head=[float(s) for s in spectrum[:SCHMIDT_HEAD]],
            entropy=entanglement_entropy(spectrum),
            coefficients=big.vector.coefficients,
        )
