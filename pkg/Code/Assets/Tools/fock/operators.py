"""
Normal-ordered boson algebra for quadrature powers.

Convention: x = (a + a†)/√2, p = (a − a†)/(i√2), [x, p] = i.
A monomial a†^p a^q is keyed by the pair (p, q); coefficients are exact Fractions
until a matrix is built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, Literal, Mapping, Tuple

from Code.Assets.Tools.core.errors import InvalidOrderError

Monomial = Tuple[int, int]
Quadrature = Literal["X", "P"]


@dataclass(frozen=True)
class OperatorPolynomial:
    """Sum of normal-ordered monomials a†^p a^q with rational coefficients."""
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {k: Fraction(v) for k, v in self.terms.items() if v != 0}
        for p, q in cleaned:
            if p < 0 or q < 0:
                raise ValueError(f"negative ladder power in monomial ({p}, {q})")
        object.__setattr__(self, "terms", cleaned)

    def coefficient(self, p: int, q: int) -> Fraction:
        return self.terms.get((p, q), Fraction(0))

    @property
    def constant(self) -> Fraction:
        return self.coefficient(0, 0)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def is_hermitian(self) -> bool:
        return all(self.coefficient(q, p) == c for (p, q), c in self.terms.items())

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        merged: Dict[Monomial, Fraction] = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return OperatorPolynomial(merged)

    def scaled(self, factor: Fraction | int) -> "OperatorPolynomial":
        return OperatorPolynomial({k: c * factor for k, c in self.terms.items()})

    def __len__(self) -> int:
        return len(self.terms)


def _check_order(order: int) -> int:
    if isinstance(order, bool) or not isinstance(order, int) or order < 2 or order % 2:
        raise InvalidOrderError(f"order must be an even integer >= 2, got {order!r}")
    return order // 2


def ladder_power(sign: int, m: int) -> OperatorPolynomial:
    """Normal-ordered (a + s a†)^m for s = ±1.

    (a + s a†)^m = Σ_{i+k+2l=m} m! s^{i+l} / (i! k! l! 2^l) a†^i a^k
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if m < 0:
        raise InvalidOrderError(f"power must be nonnegative, got {m}")
    terms: Dict[Monomial, Fraction] = {}
    for l in range(m // 2 + 1):
        rest = m - 2 * l
        for i in range(rest + 1):
            k = rest - i
            c = Fraction(factorial(m), factorial(i) * factorial(k) * factorial(l) * 2 ** l)
            terms[(i, k)] = c * sign ** (i + l)
    return OperatorPolynomial(terms)


def expand_quadrature_power(which: Quadrature, order: int) -> OperatorPolynomial:
    """x^{2n} or p^{2n} in normal order, exact."""
    n = _check_order(order)
    if which == "X":
        return ladder_power(1, order).scaled(Fraction(1, 2 ** n))
    if which == "P":
        return ladder_power(-1, order).scaled(Fraction((-1) ** n, 2 ** n))
    raise ValueError(f"unknown quadrature {which!r}")


def expand_sum(order: int) -> OperatorPolynomial:
    """x^{2n} + p^{2n}; only monomials with p − q ≡ 0 (mod 4) survive."""
    return expand_quadrature_power("X", order) + expand_quadrature_power("P", order)


def vacuum_expectation(order: int) -> float:
    """⟨0|x^{2n} + p^{2n}|0⟩ = (2n)!/(2^{2n−1} n!), accumulated as a float product."""
    n = _check_order(order)
    value = 2.0
    for j in range(1, n + 1):
        # (2j)(2j−1)/(4j) per step
        value *= (2 * j - 1) / 2.0
    return value


def vacuum_expectation_exact(order: int) -> Fraction:
    n = _check_order(order)
    return Fraction(factorial(2 * n), 2 ** (2 * n - 1) * factorial(n))


def factorizable_quartic() -> OperatorPolynomial:
    """a⁴ + a†⁴ + 6a†²a² + 24a†a, the single-mode part of the fourth-order Duan sum on |ψ⟩⊗|0⟩."""
    return OperatorPolynomial({(0, 4): 1, (4, 0): 1, (2, 2): 6, (1, 1): 24})
