"""
Command-line runner for the higher-order EPR toolkit.
Usage:
  python -m Code.Agents.hoepr.hoepr.run lambda --order 4 --trunc 2000
  python -m Code.Agents.hoepr.hoepr.run state --family squeezed_vacuum --lam -0.9 --criterion duan_higher --order 4

JSON goes to stdout (CSV for wavefunction grids), logs and errors to stderr.
Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 unphysical covariance.
"""
import argparse
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from Code.Assets.Tools.core.errors import (
    HoeprError,
    MemoryGuardError,
    NonConvergenceError,
    TruncationTailError,
    UnphysicalCovarianceError,
)
from Code.Assets.Tools.core.pipeline import Pipeline
from Code.Assets.Tools.io.store import dumps, grid_csv, payload
from Knowledge.Schema.Artifacts.request import RunRequestArtifact
from Code.Agents.hoepr.hoepr.agents.spectral import SpectralAgent
from Code.Agents.hoepr.hoepr.models import RunConfig
from Code.Agents.hoepr.hoepr.settings import Settings, load_settings
from Code.Agents.hoepr.hoepr.stages.bipartite_stage import BipartiteStage
from Code.Agents.hoepr.hoepr.stages.lambda_stage import LambdaStage
from Code.Agents.hoepr.hoepr.stages.scan_stage import GaussianScanStage, HierarchyStage, ThresholdsStage
from Code.Agents.hoepr.hoepr.stages.state_stage import StateStage
from Code.Agents.hoepr.hoepr.stages.wavefunction_stage import FitStage, WavefunctionStage

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_UNPHYSICAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; usage errors here are 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, help="2n for quadrature commands and duan_higher, n for power and scans")
    common.add_argument("--trunc", dest="truncation", type=int, help="Fock truncation N (per mode for bipartite)")
    common.add_argument("--tol", type=float, help="eigen-residual tolerance (default: HOEPR_TOL or 1e-10)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", dest="output_format", choices=["json", "csv"])
    common.add_argument("--solver", choices=["dense", "banded_iterative"], default="banded_iterative")
    common.add_argument("--threads", type=int, help="worker cap (default: HOEPR_THREADS or 1)")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")

    p = _Parser(prog="hoepr", description="Higher-order quadrature bounds and entanglement criteria")
    sub = p.add_subparsers(dest="command", required=True)

    lam = sub.add_parser("lambda", parents=[common], help="minimal eigenvalue of x^2n + p^2n")
    lam.add_argument("--sweep", type=_int_list, help="comma-separated increasing truncations to sweep")

    bip = sub.add_parser("bipartite", parents=[common], help="two-mode minimal eigenvalue and scaling check")
    bip.add_argument("--sign", choices=["plus", "minus"], default="plus")

    wav = sub.add_parser("wavefunction", parents=[common], help="minimizer on a grid and derivatives at zero")
    wav.add_argument("--grid", type=float, nargs=3, metavar=("MIN", "MAX", "STEP"), default=(-6.0, 6.0, 0.01))
    wav.add_argument("--derivs", type=int, default=0, help="derivative columns in the grid dump")

    sub.add_parser("fit", parents=[common], help="Bessel-Gauss approximant of the minimizer")

    st = sub.add_parser("state", parents=[common], help="evaluate a criterion on a state")
    st.add_argument("--family", choices=["squeezed_vacuum", "psi_n", "psi2_prime", "explicit", "gaussian"], required=True)
    st.add_argument("--lam", type=float)
    st.add_argument("--n", type=int)
    st.add_argument("--xi", type=float)
    st.add_argument("--criterion", choices=["duan_higher", "power", "dbS"], default="power")
    st.add_argument("--sign", choices=["plus", "minus"], default="plus")
    st.add_argument("--best-sign", action="store_true", help="report the smaller of the two signs")
    st.add_argument("--covariance", type=float, nargs=16, help="row-major 4x4 covariance in (x_a, x_b, p_a, p_b)")
    st.add_argument("--mean", type=float, nargs=4)
    st.add_argument("--coefficients", dest="coefficients_file", help="CSV of c_kl for the explicit family")

    scan = sub.add_parser("gaussian-scan", parents=[common], help="random Gaussian scan of the power criterion")
    scan.add_argument("--samples", type=int, default=10_000)

    sub.add_parser("hierarchy", parents=[common], help="doubling relation across tabulated orders")
    sub.add_parser("thresholds", parents=[common], help="print the threshold catalog")
    return p


def make_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    raw: Dict[str, object] = {k: v for k, v in vars(args).items() if v is not None and k != "verbose"}
    raw.setdefault("tol", settings.tol)
    raw.setdefault("threads", settings.threads)
    raw.setdefault("output_format", "csv" if args.command == "wavefunction" else "json")
    if raw["output_format"] == "csv" and args.command != "wavefunction":
        raise ValueError("csv output is only available for wavefunction grids")
    for key in ("grid", "covariance", "mean", "sweep"):
        if key in raw:
            raw[key] = tuple(raw[key])
    return RunConfig(**raw)


def build_pipeline(cfg: RunConfig, settings: Settings) -> Pipeline:
    agent = SpectralAgent(cfg.tol, cfg.solver, settings.dense_cap, settings.bipartite_cap)
    stages = {
        "lambda": lambda: [LambdaStage(agent)],
        "bipartite": lambda: [BipartiteStage(agent)],
        "wavefunction": lambda: [LambdaStage(agent), WavefunctionStage()],
        "fit": lambda: [LambdaStage(agent), FitStage()],
        "state": lambda: [StateStage()],
        "gaussian-scan": lambda: [GaussianScanStage()],
        "hierarchy": lambda: [HierarchyStage()],
        "thresholds": lambda: [ThresholdsStage()],
    }
    return Pipeline(stages[cfg.command]())


def render(art, cfg: RunConfig) -> str:
    if cfg.output_format == "csv":
        derivs = art.derivatives.derivatives
        header = "".join(f"# d{m}(0)={v:.12e}\n" for m, v in enumerate(derivs))
        return f"# order={art.order} N={art.N} lambda={art.eigenvalue:.12e}\n" + header + grid_csv(art.grid)
    return dumps(payload(art, cfg.echo())) + "\n"


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        settings = load_settings()
        cfg = make_config(args, settings)
    except (ValidationError, ValueError) as e:
        return _fail(EXIT_USAGE, str(e))

    try:
        art = build_pipeline(cfg, settings).run(RunRequestArtifact(config=cfg), config=cfg)
    except (NonConvergenceError, TruncationTailError, MemoryGuardError) as e:
        return _fail(EXIT_NUMERICAL, str(e))
    except UnphysicalCovarianceError as e:
        return _fail(EXIT_UNPHYSICAL, f"{e} (min eigenvalue {e.min_eigenvalue:.3e})")
    except (ValidationError, HoeprError, ValueError, KeyError, FileNotFoundError) as e:
        return _fail(EXIT_USAGE, str(e))
    except RuntimeError as e:
        return _fail(EXIT_NUMERICAL, str(e))

    try:
        out = render(art, cfg)
    except ValueError as e:
        return _fail(EXIT_NUMERICAL, f"non-finite value in output: {e}")
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
