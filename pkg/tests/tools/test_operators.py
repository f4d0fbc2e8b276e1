from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from Code.Assets.Tools.core.errors import InvalidOrderError
from Code.Assets.Tools.fock import (
    OperatorPolynomial,
    expand_quadrature_power,
    expand_sum,
    factorizable_quartic,
    ladder_power,
    vacuum_expectation,
    vacuum_expectation_exact,
)


def test_ladder_square_normal_order():
    # (a + a†)² = a² + a†² + 2a†a + 1
    poly = ladder_power(1, 2)
    assert poly.coefficient(0, 2) == 1
    assert poly.coefficient(2, 0) == 1
    assert poly.coefficient(1, 1) == 2
    assert poly.constant == 1


def test_ladder_minus_sign():
    # (a − a†)² = a² + a†² − 2a†a − 1
    poly = ladder_power(-1, 2)
    assert poly.coefficient(1, 1) == -2
    assert poly.constant == -1


def test_quadrature_square_sum_is_number_operator():
    poly = expand_sum(2)
    assert dict(poly.items()) == {(0, 0): Fraction(1), (1, 1): Fraction(2)}


@pytest.mark.parametrize("order", [2, 4, 6, 8, 10, 12])
def test_sum_keeps_only_multiples_of_four(order):
    poly = expand_sum(order)
    assert poly.is_hermitian()
    assert all((p - q) % 4 == 0 for (p, q), _ in poly.items())


@pytest.mark.parametrize("order", [2, 4, 6, 8])
def test_vacuum_expectation(order):
    n = order // 2
    exact = Fraction(factorial(2 * n), 2 ** (2 * n - 1) * factorial(n))
    assert vacuum_expectation_exact(order) == exact
    assert vacuum_expectation(order) == pytest.approx(float(exact), rel=1e-15)
    assert expand_sum(order).constant == exact


def test_vacuum_values_small_orders():
    assert vacuum_expectation(2) == 1.0
    assert vacuum_expectation(4) == 1.5


@pytest.mark.parametrize("order", [0, 3, -2, 2.0, True])
def test_invalid_orders(order):
    with pytest.raises(InvalidOrderError):
        expand_sum(order)


def test_x_power_coefficients_quartic():
    # x⁴ = (a⁴ + a†⁴ + 4a†a³ + 4a†³a + 6a†²a² + 6a² + 6a†² + 12a†a + 3)/4
    poly = expand_quadrature_power("X", 4)
    assert poly.coefficient(2, 2) == Fraction(6, 4)
    assert poly.coefficient(1, 1) == Fraction(12, 4)
    assert poly.constant == Fraction(3, 4)


def test_factorizable_quartic_is_hermitian():
    poly = factorizable_quartic()
    assert poly.is_hermitian()
    assert len(poly) == 4


def test_polynomial_addition_drops_zeros():
    a = OperatorPolynomial({(1, 1): 1})
    b = OperatorPolynomial({(1, 1): -1, (0, 0): 2})
    assert dict((a + b).items()) == {(0, 0): Fraction(2)}


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        OperatorPolynomial({(-1, 0): 1})
