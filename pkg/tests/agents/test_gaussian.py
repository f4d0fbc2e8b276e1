import numpy as np
import pytest

from Code.Assets.Tools.core.errors import DomainError, UnphysicalCovarianceError
from Code.Agents.hoepr.hoepr.agents.gaussian import (
    A,
    AD,
    B,
    BD,
    criterion_dbS,
    duan_entangled,
    duan_higher_value,
    fourth_moments_closed,
    gaussian_power_moments,
    inequality_chain,
    is_phase_normalized,
    local_rotation,
    local_squeeze,
    min_uncertainty_eigenvalue,
    phase_normalize,
    physicality,
    power_value,
    random_physical_covariance,
    require_physical,
    strict_power_value,
    power_criterion_scan,
    transform,
    two_mode_squeezed,
    wick_fourth_moments,
    wick_moment,
)
from Code.Agents.hoepr.hoepr.agents.states import squeezed_moment
from Code.Agents.hoepr.hoepr.models import CovarianceMatrix

SEEDS = range(25)


def _separable(seed):
    rng = np.random.default_rng(seed)
    nu = 0.5 + rng.exponential(0.5, size=2)
    thermal = CovarianceMatrix(np.diag([nu[0], nu[1], nu[0], nu[1]]), rng.normal(size=4))
    S = (
        local_rotation(*rng.uniform(0, 2 * np.pi, size=2))
        @ local_squeeze(*rng.normal(0.0, 0.6, size=2))
        @ local_rotation(*rng.uniform(0, 2 * np.pi, size=2))
    )
    return transform(thermal, S)


def test_vacuum_is_physical():
    vac = CovarianceMatrix.vacuum()
    assert physicality(vac)
    assert min_uncertainty_eigenvalue(vac) == pytest.approx(0.0, abs=1e-12)


def test_unphysical_rejected():
    cov = CovarianceMatrix(0.1 * np.eye(4))
    assert not physicality(cov)
    with pytest.raises(UnphysicalCovarianceError) as info:
        require_physical(cov)
    assert info.value.min_eigenvalue < 0


def test_asymmetric_covariance_rejected():
    sigma = 0.5 * np.eye(4)
    sigma[0, 1] = 0.1
    with pytest.raises(ValueError):
        CovarianceMatrix(sigma)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_covariances_are_physical(seed):
    assert physicality(random_physical_covariance(seed))


def test_random_covariance_reproducible():
    a = random_physical_covariance(11)
    b = random_physical_covariance(11)
    np.testing.assert_array_equal(a.sigma, b.sigma)


def test_ladder_pairs_on_vacuum():
    vac = CovarianceMatrix.vacuum()
    assert wick_moment((A, AD), vac) == pytest.approx(1.0)
    assert wick_moment((AD, A), vac) == pytest.approx(0.0)
    assert wick_moment((B, BD, B, BD), vac) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", SEEDS)
def test_phase_normalization(seed):
    cov, phi_a, phi_b = phase_normalize(random_physical_covariance(seed).centered())
    assert is_phase_normalized(cov)


@pytest.mark.parametrize("seed", SEEDS)
def test_closed_fourth_moments_match_wick(seed):
    cov = phase_normalize(random_physical_covariance(seed).centered())[0]
    closed = fourth_moments_closed(cov)
    wick = wick_fourth_moments(cov)
    assert closed.n_a2 == pytest.approx(wick.n_a2, abs=1e-9)
    assert closed.anti_b2 == pytest.approx(wick.anti_b2, abs=1e-9)
    assert closed.cross_abs2 == pytest.approx(wick.cross_abs2, abs=1e-9)


def test_closed_moments_need_normalization():
    sigma = np.diag([1.0, 0.5, 0.25, 0.5])
    with pytest.raises(DomainError):
        fourth_moments_closed(CovarianceMatrix(sigma))


@pytest.mark.parametrize("r", [0.0, 0.3, 0.8, 1.5])
def test_two_mode_squeezed_strict_value_is_two(r):
    assert strict_power_value(two_mode_squeezed(r)) == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("r", [0.2, 0.9])
def test_two_mode_squeezed_duan(r):
    cov = two_mode_squeezed(r)
    assert duan_higher_value(cov, 2, "minus") == pytest.approx(2 * np.exp(-2 * r), rel=1e-12)
    assert duan_higher_value(cov, 2, "plus") == pytest.approx(2 * np.exp(2 * r), rel=1e-12)
    lam = np.tanh(r)
    assert duan_higher_value(cov, 4, "plus") == pytest.approx(2 * squeezed_moment(2, lam, "plus"), rel=1e-10)
    assert duan_entangled(cov)


def test_duan_with_displacement():
    cov = CovarianceMatrix(0.5 * np.eye(4), np.array([1.0, 0.0, 0.0, 0.0]))
    assert duan_higher_value(cov, 2, "plus") == pytest.approx(3.0)


def test_power_moments_on_vacuum():
    n_a, anti_b, cross = gaussian_power_moments(CovarianceMatrix.vacuum(), 3)
    assert n_a == pytest.approx(0.0)
    assert anti_b == pytest.approx(6.0)
    assert abs(cross) == pytest.approx(0.0)


def test_power_value_signs_on_two_mode_squeezed():
    cov = two_mode_squeezed(0.5)
    plus, strict = power_value(cov, 2, "plus")
    minus, _ = power_value(cov, 2, "minus")
    assert minus == pytest.approx(strict, abs=1e-10)
    assert plus > minus


def test_dbs_ignores_displacement():
    cov = two_mode_squeezed(0.4)
    shifted = CovarianceMatrix(cov.sigma, np.array([0.7, -0.2, 0.1, 0.3]))
    assert criterion_dbS(shifted, "minus")[0] == pytest.approx(criterion_dbS(cov, "minus")[0], abs=1e-10)


@pytest.mark.parametrize("seed", SEEDS)
def test_strict_value_phase_invariant(seed):
    cov = random_physical_covariance(seed)
    rotated = transform(cov, local_rotation(0.7, -1.3))
    assert strict_power_value(rotated) == pytest.approx(strict_power_value(cov), abs=1e-9)
    assert strict_power_value(rotated, 3) == pytest.approx(strict_power_value(cov, 3), abs=1e-8)


@pytest.mark.parametrize("seed", SEEDS)
def test_closed_strict_matches_wick(seed):
    cov = random_physical_covariance(seed)
    n_a, anti_b, cross = gaussian_power_moments(cov, 2, centered=True)
    assert strict_power_value(cov) == pytest.approx(n_a + anti_b - 2 * abs(cross), abs=1e-9)


@pytest.mark.parametrize("seed", SEEDS)
def test_inequality_chain(seed):
    cov = phase_normalize(random_physical_covariance(seed).centered())[0]
    chain = inequality_chain(cov)
    assert chain.uv_holds
    assert chain.A_holds


def test_separable_states_never_flagged():
    values = [strict_power_value(_separable(seed)) for seed in range(1000)]
    assert min(values) >= 2.0 - 1e-9
    assert not any(duan_entangled(_separable(seed)) for seed in range(100))


def test_scan_small():
    report = power_criterion_scan(300, seed=7)
    assert report.samples == 300
    assert report.violations == 0
    assert report.min_value == pytest.approx(2.0, abs=1e-9)
    assert report.bound == 2.0
    assert report.entangled_fraction >= 0.05
    assert report.note is None


def test_scan_deterministic_across_threads():
    one = power_criterion_scan(60, seed=3, threads=1)
    many = power_criterion_scan(60, seed=3, threads=4)
    assert one.model_dump() == many.model_dump()


def test_scan_explicit_covariances():
    report = power_criterion_scan(2, seed=0, covariances=[two_mode_squeezed(0.3), CovarianceMatrix.vacuum()])
    assert report.samples == 2
    assert report.min_value == pytest.approx(2.0, abs=1e-9)


def test_scan_higher_order_note():
    report = power_criterion_scan(20, seed=1, order=3)
    assert report.bound == 6.0
    assert report.note


@pytest.mark.slow
def test_full_scan():
    report = power_criterion_scan(10_000, seed=42)
    assert report.violations == 0
    assert report.entangled_fraction >= 0.05
    assert report.min_value == pytest.approx(2.0, abs=1e-9)
