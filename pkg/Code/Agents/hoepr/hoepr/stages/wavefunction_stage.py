from Code.Assets.Tools.core.stage import Stage
from Code.Assets.Tools.special import gauss_hermite_norm
from Knowledge.Schema.Artifacts.spectral import EigenArtifact
from Knowledge.Schema.Artifacts.wavefunction import FitArtifact, WavefunctionArtifact
from Code.Agents.hoepr.hoepr.agents.wavefunction import (
    derivatives_at_zero,
    fit_bessel_gauss,
    k_argument,
    ode_residual,
    wave_grid,
)
from Code.Agents.hoepr.hoepr.models import DerivativeTable


class WavefunctionStage(Stage[EigenArtifact, WavefunctionArtifact]):
    """Real-space dump of a minimizer; expects ``config`` in kwargs for grid and derivative count."""

    def __init__(self) -> None:
        super().__init__("wavefunction", EigenArtifact, WavefunctionArtifact)

    def run(self, inp: EigenArtifact, **kwargs) -> WavefunctionArtifact:
        cfg = kwargs["config"]
        frame = wave_grid(inp.coefficients, cfg.grid, cfg.derivs)
        derivs = derivatives_at_zero(inp.coefficients, inp.order - 2, inp.order)
        return WavefunctionArtifact(
            order=inp.order,
            N=inp.N,
            eigenvalue=inp.lam,
            norm=gauss_hermite_norm(inp.coefficients),
            ode_residual=ode_residual(inp.coefficients, inp.order, inp.lam),
            derivatives=DerivativeTable(order=inp.order, eigenvalue=inp.lam, derivatives=derivs),
            grid=frame,
        )


class FitStage(Stage[EigenArtifact, FitArtifact]):
    def __init__(self) -> None:
        super().__init__("fit", EigenArtifact, FitArtifact)

    def run(self, inp: EigenArtifact, **kwargs) -> FitArtifact:
        fit = fit_bessel_gauss(inp.coefficients)
        return FitArtifact(
            order=inp.order,
            N=inp.N,
            eigenvalue=inp.lam,
            fit=fit,
            k_argument=k_argument(fit.a, fit.b),
        )
