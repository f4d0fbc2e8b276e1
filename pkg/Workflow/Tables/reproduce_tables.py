"""
Recompute the reference tables in one go: minimal eigenvalues and their growth,
bipartite scaling, derivatives at the origin, Bessel-Gauss fits, the hierarchy
check, the threshold catalog and the Gaussian scan.

Usage example:
    PYTHONPATH="$PWD" python3 Workflow/Tables/reproduce_tables.py --orders 2,4,6,8 --samples 10000
"""

import argparse
import logging
import os
from datetime import datetime
from typing import Dict, List

from Code.Assets.Tools.core.pipeline import Pipeline
from Code.Assets.Tools.io.store import dumps, save_artifact, save_grid
from Code.Agents.hoepr.hoepr.agents.spectral import SpectralAgent, growth_ratios, doubling_relation
from Code.Agents.hoepr.hoepr.models import RunConfig
from Code.Agents.hoepr.hoepr.settings import load_settings
from Code.Agents.hoepr.hoepr.stages.bipartite_stage import BipartiteStage
from Code.Agents.hoepr.hoepr.stages.lambda_stage import LambdaStage
from Code.Agents.hoepr.hoepr.stages.scan_stage import GaussianScanStage, HierarchyStage, ThresholdsStage
from Code.Agents.hoepr.hoepr.stages.wavefunction_stage import FitStage, WavefunctionStage
from Knowledge.Schema.Artifacts.request import RunRequestArtifact

logger = logging.getLogger("reproduce_tables")

parser = argparse.ArgumentParser(description="Recompute eigenvalue, fit and criterion tables.")
parser.add_argument("--orders", default="2,4,6,8,10,12", help="comma-separated even orders 2n")
parser.add_argument("--bipartite-orders", default="2,4", help="orders for the product-basis scaling check")
parser.add_argument("--samples", type=int, default=10_000, help="Gaussian scan size")
parser.add_argument("--seed", type=int, default=42)
parser.add_argument("--root", default=".", help="directory holding Data/Outputs")
args = parser.parse_args()


def _request(**kw) -> RunRequestArtifact:
    return RunRequestArtifact(config=RunConfig(**kw))


def reproduce(orders: List[int], bipartite_orders: List[int], samples: int, seed: int, root: str) -> Dict[str, object]:
    settings = load_settings()
    agent = SpectralAgent(settings.tol, "banded_iterative", settings.dense_cap, settings.bipartite_cap)
    summary: Dict[str, object] = {"eigenvalues": {}, "derivatives": {}, "fits": {}, "scaling": {}}

    for order in orders:
        logger.info("tables: order %d", order)
        cfg = RunConfig(command="wavefunction", order=order, derivs=0)
        wave = Pipeline([LambdaStage(agent), WavefunctionStage()]).run(RunRequestArtifact(config=cfg), config=cfg)
        path = save_artifact(wave, f"wavefunction_{order}.json", root=root)
        save_grid(wave.grid, path.with_suffix(".csv"))
        summary["eigenvalues"][order] = wave.eigenvalue
        summary["derivatives"][order] = wave.derivatives.derivatives

        if order >= 4:
            fit = Pipeline([LambdaStage(agent), FitStage()]).run(_request(command="fit", order=order))
            save_artifact(fit, f"fit_{order}.json", root=root)
            summary["fits"][order] = {"a": fit.fit.a, "b": fit.fit.b, "c": fit.fit.c, "K": fit.k_argument}

    summary["ratios"] = growth_ratios(summary["eigenvalues"])
    summary["doubling"] = doubling_relation(summary["eigenvalues"])

    for order in bipartite_orders:
        art = BipartiteStage(agent).run(_request(command="bipartite", order=order))
        save_artifact(art, f"bipartite_{order}.json", root=root)
        summary["scaling"][order] = art.scaling.model_dump()

    for name, stage, req in [
        ("hierarchy", HierarchyStage(), _request(command="hierarchy")),
        ("thresholds", ThresholdsStage(), _request(command="thresholds")),
        ("gaussian_scan", GaussianScanStage(), _request(command="gaussian-scan", samples=samples, seed=seed, threads=settings.threads)),
    ]:
        art = stage.run(req)
        save_artifact(art, f"{name}.json", root=root)
        if name == "gaussian_scan":
            summary[name] = art.report.model_dump()
    return summary


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    orders = [int(v) for v in args.orders.split(",") if v.strip()]
    bipartite_orders = [int(v) for v in args.bipartite_orders.split(",") if v.strip()]
    summary = reproduce(orders, bipartite_orders, args.samples, args.seed, args.root)

    output_dir = os.path.join(args.root, "Data", "Outputs", "reports")
    os.makedirs(output_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    report_file = os.path.join(output_dir, f"tables_{timestamp}.json")
    with open(report_file, "w", encoding="utf-8") as f:
        f.write(dumps(summary))
    logger.info("tables: report saved to %s", report_file)

    print("\nMinimal eigenvalues:")
    for order, value in summary["eigenvalues"].items():
        print(f"  2n={order:>2}  lambda={value:.8f}")
