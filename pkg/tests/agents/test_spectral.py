import numpy as np
import pytest

from Code.Assets.Tools.core.errors import MemoryGuardError
from Code.Agents.hoepr.hoepr.agents.spectral import (
    SpectralAgent,
    analytic_fourth_order_bound,
    build_bipartite_matrix,
    doubling_relation,
    eigenstate_moments,
    eigenvalue_growth_report,
    entanglement_entropy,
    fourth_order_lower_function,
    growth_ratios,
    heisenberg_product_bound,
    min_eigenpair,
    minimizer,
    moment_product_floor,
    scaling_identity_report,
    schmidt_spectrum,
    truncation_sweep,
    verify_scaling_identity,
)
from Code.Agents.hoepr.hoepr.models import BipartiteFockVector, FockVector
from Knowledge.Schema.threshold_registry import BIPARTITE_LAMBDA, SINGLE_MODE_LAMBDA


def test_order_two_is_one():
    result = minimizer(2, 10)
    assert result.eigenvalue == pytest.approx(1.0, abs=1e-12)
    assert isinstance(result.vector, FockVector)
    assert result.truncation == 10


def test_order_four_value(solved):
    assert solved(4).eigenvalue == pytest.approx(1.39672823, rel=1e-7)


def test_minimizer_lives_in_multiples_of_four(solved):
    c = solved(6).vector.coefficients
    off = np.delete(c, np.arange(0, len(c), 4))
    assert np.max(np.abs(off)) < 1e-8


@pytest.mark.parametrize("order", [4, 6])
def test_moment_identity(solved, order):
    result = solved(order)
    moments = eigenstate_moments(result, order)
    assert moments.x_moment == pytest.approx(result.eigenvalue / 2, rel=1e-6)
    assert moments.p_moment == pytest.approx(result.eigenvalue / 2, rel=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vacuum_attains_gaussian_product(n):
    moments = eigenstate_moments(minimizer(2, 10), 2 * n)
    assert moments.x_moment * moments.p_moment == pytest.approx(heisenberg_product_bound(n), rel=1e-12)


@pytest.mark.parametrize("order", [4, 6])
def test_minimizers_undercut_gaussian_product(solved, order):
    n = order // 2
    moments = eigenstate_moments(solved(order), order)
    product = moments.x_moment * moments.p_moment
    assert product < heisenberg_product_bound(n)
    assert product >= moment_product_floor(n)


def test_heisenberg_product_bound_values():
    assert heisenberg_product_bound(1) == pytest.approx(0.25)
    assert heisenberg_product_bound(2) == pytest.approx((3 / 4) ** 2)


def test_analytic_bound_below_eigenvalue(solved):
    bound = analytic_fourth_order_bound()
    assert bound == pytest.approx(1.32843, abs=1e-5)
    assert solved(4).eigenvalue >= bound


def test_lower_function_minimum():
    delta = 3 - 2 * np.sqrt(2)
    A = np.linspace(0, 2, 2001)
    B = np.linspace(0, 2, 201)[:, None]
    values = fourth_order_lower_function(A, B)
    assert values.min() >= analytic_fourth_order_bound() - 1e-9
    assert fourth_order_lower_function(delta / (2 * np.sqrt(2)), 0.0) == pytest.approx(1.5 - delta, abs=1e-12)


def test_sweep_is_monotone():
    report = truncation_sweep(8, [40, 80, 160, 320], tol=1e-6, threads=2)
    values = [p.eigenvalue for p in report.points]
    assert report.monotone
    assert values[-1] <= values[0]


def test_sweep_rejects_unsorted_schedule():
    with pytest.raises(ValueError):
        truncation_sweep(4, [100, 50], tol=1e-6)


def test_sweep_reports_convergence():
    report = truncation_sweep(4, [200, 300], tol=1e-8)
    assert report.converged
    assert report.converged_at == 300


def test_bipartite_order_two():
    agent = SpectralAgent()
    result = agent.bipartite(2, "plus", 10)
    assert result.eigenvalue == pytest.approx(2.0, abs=1e-10)
    assert isinstance(result.vector, BipartiteFockVector)


@pytest.mark.parametrize("order", [2, 4])
def test_scaling_identity(solved, order):
    check = scaling_identity_report(order, 40, 1e-4, single_mode=solved(order))
    assert check.holds
    assert check.ratio == pytest.approx(2 ** (order // 2), rel=1e-4)
    assert check.bipartite_eigenvalue == pytest.approx(BIPARTITE_LAMBDA[order], rel=1e-3)


@pytest.mark.slow
def test_scaling_identity_order_six(solved):
    check = scaling_identity_report(6, 40, 1e-4, single_mode=solved(6, 2000))
    assert check.holds
    assert check.bipartite_eigenvalue == pytest.approx(BIPARTITE_LAMBDA[6], rel=1e-3)


def test_plus_and_minus_bipartite_agree():
    plus = min_eigenpair(build_bipartite_matrix(4, "plus", 20), 1e-8, solver="dense", dense_cap=400)
    minus = min_eigenpair(build_bipartite_matrix(4, "minus", 20), 1e-8, solver="dense", dense_cap=400)
    assert plus.eigenvalue == pytest.approx(minus.eigenvalue, rel=1e-10)


def test_bipartite_memory_guard():
    with pytest.raises(MemoryGuardError):
        build_bipartite_matrix(4, "plus", 400)


def test_bipartite_minimizer_is_entangled():
    result = SpectralAgent().bipartite(4, "plus", 20)
    spectrum = schmidt_spectrum(result.vector)
    assert np.sum(spectrum > 1e-6) > 1
    assert entanglement_entropy(spectrum) > 0


def test_entropy_of_product_state():
    state = BipartiteFockVector.product([1.0, 0.0], [0.0, 1.0])
    assert entanglement_entropy(schmidt_spectrum(state)) == pytest.approx(0.0, abs=1e-12)


def test_growth_helpers_on_table_values():
    ratios = growth_ratios(SINGLE_MODE_LAMBDA)
    assert [o for o, _ in ratios] == [4, 6, 8, 10, 12]
    assert all(b[1] > a[1] for a, b in zip(ratios, ratios[1:]))
    assert all(holds for _, holds in doubling_relation(SINGLE_MODE_LAMBDA))


def test_growth_report_small_orders():
    report = eigenvalue_growth_report(orders=(2, 4), truncation=300)
    assert report.eigenvalues[2] == pytest.approx(1.0)
    assert report.doubling == [(2, True)]


@pytest.mark.slow
@pytest.mark.parametrize("order", sorted(SINGLE_MODE_LAMBDA))
def test_single_mode_table(order):
    result = minimizer(order, 4000)
    assert result.eigenvalue == pytest.approx(SINGLE_MODE_LAMBDA[order], rel=5e-4)


def test_verify_scaling_identity_order_two():
    assert verify_scaling_identity(2, 20, 1e-4)
