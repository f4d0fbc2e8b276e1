from Code.Assets.Tools.core.stage import Stage
from Knowledge.Schema.Artifacts.criterion import HierarchyArtifact, ScanArtifact, ThresholdCatalogArtifact
from Knowledge.Schema.Artifacts.request import RunRequestArtifact
from Knowledge.Schema.threshold_registry import threshold_registry
from Code.Agents.hoepr.hoepr.agents.criteria import hierarchy_consistency
from Code.Agents.hoepr.hoepr.agents.gaussian import power_criterion_scan


class GaussianScanStage(Stage[RunRequestArtifact, ScanArtifact]):
    def __init__(self) -> None:
        super().__init__("gaussian-scan", RunRequestArtifact, ScanArtifact)

    def run(self, inp: RunRequestArtifact, **kwargs) -> ScanArtifact:
        cfg = inp.config
        report = power_criterion_scan(cfg.samples, cfg.seed, order=cfg.effective_order(), threads=cfg.threads)
        return ScanArtifact(report=report)


class HierarchyStage(Stage[RunRequestArtifact, HierarchyArtifact]):
    def __init__(self) -> None:
        super().__init__("hierarchy", RunRequestArtifact, HierarchyArtifact)

    def run(self, inp: RunRequestArtifact, **kwargs) -> HierarchyArtifact:
        return HierarchyArtifact(report=hierarchy_consistency())


class ThresholdsStage(Stage[RunRequestArtifact, ThresholdCatalogArtifact]):
    def __init__(self) -> None:
        super().__init__("thresholds", RunRequestArtifact, ThresholdCatalogArtifact)

    def run(self, inp: RunRequestArtifact, **kwargs) -> ThresholdCatalogArtifact:
        catalog = {
            key: [
                {
                    "value": r.value,
                    "role": r.role,
                    "provenance": r.source.provenance,
                    "name": r.source.name,
                    "expression": r.source.expression,
                }
                for r in sorted(records, key=lambda r: r.value)
            ]
            for key, records in threshold_registry.all().items()
        }
        return ThresholdCatalogArtifact(thresholds=catalog)
