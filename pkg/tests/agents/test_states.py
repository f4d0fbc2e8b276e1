from math import factorial

import numpy as np
import pytest

from Code.Assets.Tools.core.errors import DomainError, TruncationTailError
from Code.Assets.Tools.special import hermite_functions
from Code.Agents.hoepr.hoepr.agents.states import (
    coefficient_matrix,
    criterion_value_psi2_prime,
    criterion_value_psi_n,
    family_terms,
    fock_duan_value,
    fock_mean,
    fock_power_moments,
    fock_power_value,
    psi2_prime_norm,
    psi2_prime_wavefunction,
    psi2_wavefunction,
    psi_n_norm,
    series_wavefunction,
    squeezed_moment,
    squeezed_moment_fock,
    truncate_to_fock,
)
from Code.Agents.hoepr.hoepr.models import StateSpec

LAMBDAS = [-0.9, -0.7, -0.3, 0.3, 0.7, 0.9]
XIS = [-0.7, -0.3, 0.3, 0.7]


@pytest.mark.parametrize("xi", [0.0, 0.3, -0.6, 0.95])
def test_psi2_norm_closed_form(xi):
    k = np.arange(4000)
    assert psi_n_norm(2, xi) ** -2 == pytest.approx(np.sum(xi ** (2 * k) / (2 * k + 1)), rel=1e-10)


@pytest.mark.parametrize("n, xi", [(3, 0.5), (3, -0.8), (4, 0.6), (5, 0.9)])
def test_psi_n_norm_matches_series(n, xi):
    k = np.arange(4000, dtype=float)
    weight = np.ones_like(k)
    for j in range(1, n):
        weight *= n * k + j
    assert psi_n_norm(n, xi) ** -2 == pytest.approx(np.sum(xi ** (2 * k) / weight), rel=1e-10)


def test_psi3_norm_at_endpoint():
    # Σ 1/((3k+1)(3k+2)) = π/(3√3)
    assert psi_n_norm(3, 1.0) ** 2 == pytest.approx(3 * np.sqrt(3) / np.pi, rel=1e-10)


@pytest.mark.parametrize("xi", [0.0, 0.4, -0.8])
def test_psi2_prime_norm(xi):
    k = np.arange(4000)
    assert psi2_prime_norm(xi) ** -2 == pytest.approx(np.sum(xi ** (2 * k) / (2 * k + 2)), rel=1e-10)


def test_domains():
    with pytest.raises(DomainError):
        squeezed_moment(1, 1.0, "plus")
    with pytest.raises(DomainError):
        psi2_prime_norm(1.0)
    with pytest.raises(DomainError):
        criterion_value_psi_n(3, 1.0, "plus")
    with pytest.raises(ValueError):
        StateSpec.psi_n(2, 1.0)


@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_squeezed_moment_matches_fock(lam, n, sign):
    assert squeezed_moment_fock(n, lam, sign) == pytest.approx(squeezed_moment(n, lam, sign), rel=1e-6)


def test_squeezed_moment_vacuum():
    n = 2
    assert squeezed_moment(n, 0.0, "plus") == pytest.approx(factorial(2 * n) / (2**n * factorial(n)))


def test_squeezed_moment_vanishes_towards_anticorrelation():
    path = np.linspace(-0.1, -0.999, 10)
    values = [squeezed_moment(2, lam, "plus") for lam in path]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-5


@pytest.mark.parametrize("xi", XIS)
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_psi2_criterion_closed_form(xi, sign):
    C = coefficient_matrix(StateSpec.psi_n(2, xi))
    assert fock_power_value(C, 2, sign) == pytest.approx(criterion_value_psi_n(2, xi, sign), rel=1e-8)


@pytest.mark.parametrize("xi", [0.3, 0.6])
def test_psi3_criterion_closed_form(xi):
    C = coefficient_matrix(StateSpec.psi_n(3, xi))
    assert fock_power_value(C, 3, "minus") == pytest.approx(criterion_value_psi_n(3, xi, "minus"), rel=1e-8)


def test_psi2_drops_below_two_in_sign_region():
    assert criterion_value_psi_n(2, 0.5, "minus") < 2
    assert criterion_value_psi_n(2, -0.5, "plus") < 2
    assert criterion_value_psi_n(2, 0.5, "plus") > 2


def test_psi3_endpoint_value():
    value = criterion_value_psi_n(3, 1.0, "minus")
    assert value == pytest.approx(psi_n_norm(3, 1.0) ** 2 * 3 / 4, rel=1e-12)
    assert value < factorial(3) / 4


@pytest.mark.parametrize("xi", XIS)
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_psi2_prime_criterion_closed_form(xi, sign):
    C = coefficient_matrix(StateSpec.psi2_prime(xi))
    assert fock_power_value(C, 2, sign) == pytest.approx(criterion_value_psi2_prime(xi, sign), rel=1e-8)


def test_psi2_prime_small_xi_limit():
    assert criterion_value_psi2_prime(0.0, "plus") == pytest.approx(8.0)
    C = coefficient_matrix(StateSpec.psi2_prime(0.0))
    assert fock_power_value(C, 2, "plus") == pytest.approx(8.0)


def test_coefficient_matrix_structure():
    C = coefficient_matrix(StateSpec.psi_n(2, 0.5), K=40).toarray()
    rows, cols = np.nonzero(C)
    assert np.all(rows == cols + 1)
    assert np.all(cols % 2 == 0)
    assert np.sum(C**2) == pytest.approx(1.0)


def test_family_terms_head():
    terms = list(family_terms(StateSpec.psi2_prime(0.5), 3))
    assert [(r, c) for r, c, _ in terms] == [(2, 1), (4, 3), (6, 5)]


def test_truncation_tail_detected():
    with pytest.raises(TruncationTailError) as info:
        coefficient_matrix(StateSpec.squeezed_vacuum(0.9), K=5)
    assert info.value.K == 5
    assert info.value.tail_mass > 0.1


def test_slow_series_rejected():
    with pytest.raises(TruncationTailError):
        coefficient_matrix(StateSpec.psi_n(3, 1.0))


def test_gaussian_has_no_coefficients():
    from Code.Agents.hoepr.hoepr.models import CovarianceMatrix

    with pytest.raises(ValueError):
        coefficient_matrix(StateSpec.gaussian(CovarianceMatrix.vacuum()))


def test_truncate_to_fock_normalized():
    vec = truncate_to_fock(StateSpec.squeezed_vacuum(0.5))
    assert np.linalg.norm(vec.coefficients) == pytest.approx(1.0, abs=1e-12)


def test_explicit_product_state_moments():
    C = coefficient_matrix(StateSpec.explicit(np.array([[1.0, 0.0], [0.0, 0.0]])))
    n_a, anti_b, cross = fock_power_moments(C, 2)
    assert (n_a, anti_b, cross) == pytest.approx((0.0, 2.0, 0.0))
    assert fock_mean(C) == pytest.approx((0.0, 0.0))


def test_duan_value_on_squeezed_vacuum():
    lam = 0.5
    C = coefficient_matrix(StateSpec.squeezed_vacuum(lam))
    expected = 2 * squeezed_moment(1, lam, "minus")
    assert fock_duan_value(C, 2, "minus") == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize(
    "lam, order, rel",
    [(-0.9, 4, 1e-8), (0.9, 4, 1e-8), (-0.9, 6, 1e-8), (0.9, 6, 1e-8), (-0.95, 4, 1e-8), (-0.95, 6, 1e-6)],
)
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_duan_value_converges_under_strong_squeezing(lam, order, rel, sign):
    spec = StateSpec.squeezed_vacuum(lam)
    C = coefficient_matrix(spec, degree=order)
    expected = 2 * squeezed_moment(order // 2, lam, sign)
    assert fock_duan_value(C, order, sign) == pytest.approx(expected, rel=rel)


def test_moment_degree_widens_truncation():
    spec = StateSpec.squeezed_vacuum(-0.95)
    assert coefficient_matrix(spec, degree=6).shape[0] > coefficient_matrix(spec).shape[0] + 100


def test_coherent_like_centering():
    # (|0⟩ + |1⟩)/√2 ⊗ |0⟩ has ⟨a⟩ = ½
    C = coefficient_matrix(StateSpec.explicit(np.array([[1.0, 0.0], [1.0, 0.0]]) / np.sqrt(2)))
    alpha, beta = fock_mean(C)
    assert alpha == pytest.approx(0.5)
    assert beta == pytest.approx(0.0)


# ── wave functions ──────────────────────────────────────────────────────────

@pytest.fixture(scope="module")
def plane():
    axis = np.linspace(-4, 4, 33)
    return np.meshgrid(axis, axis, indexing="ij")


@pytest.mark.parametrize("xi", XIS)
def test_psi2_wavefunction_matches_series(plane, xi):
    X, Y = plane
    closed = psi2_wavefunction(xi, X, Y)
    series = series_wavefunction(StateSpec.psi_n(2, xi), X, Y)
    assert np.max(np.abs(closed - series)) < 1e-8


@pytest.mark.parametrize("xi", XIS)
def test_psi2_prime_wavefunction_matches_series(plane, xi):
    X, Y = plane
    closed = psi2_prime_wavefunction(xi, X, Y)
    series = series_wavefunction(StateSpec.psi2_prime(xi), X, Y)
    assert np.max(np.abs(closed - series)) < 1e-8


def test_wavefunction_small_xi_limits(plane):
    X, Y = plane
    hx = hermite_functions(3, X.ravel())
    hy = hermite_functions(2, Y.ravel())
    ket10 = (hx[1] * hy[0]).reshape(X.shape)
    ket21 = (hx[2] * hy[1]).reshape(X.shape)
    assert np.max(np.abs(psi2_wavefunction(0.0, X, Y) - ket10)) < 1e-10
    assert np.max(np.abs(psi2_prime_wavefunction(0.0, X, Y) - ket21)) < 1e-10


def test_wavefunction_parities(plane):
    X, Y = plane
    psi = psi2_wavefunction(0.5, X, Y)
    np.testing.assert_allclose(psi, psi2_wavefunction(0.5, X, -Y), atol=1e-14)
    np.testing.assert_allclose(psi, -psi2_wavefunction(0.5, -X, Y), atol=1e-14)
    prime = psi2_prime_wavefunction(-0.5, X, Y)
    np.testing.assert_allclose(prime, -psi2_prime_wavefunction(-0.5, X, -Y), atol=1e-14)
